/** Recorded API fixtures match the client's type contracts and invariants. */

import { describe, expect, it } from 'vitest';

import { tierRank, type MaturityLabel, type TierToken } from '../src/types.js';
import { fixtures } from './helpers.js';

const LEVELS: MaturityLabel[] = ['Initial', 'Managed', 'Optimized'];
const TIERS: TierToken[] = ['basic', 'intermediate', 'advanced'];

describe('catalog fixtures', () => {
    it('builtin catalog has 7 core and 14 elective domains', () => {
        const catalog = fixtures.catalogBuiltin();
        expect(catalog.domains).toHaveLength(21);
        expect(catalog.domains.filter((d) => d.kind === 'core')).toHaveLength(7);
        expect(catalog.domains.filter((d) => d.kind === 'elective')).toHaveLength(14);
    });

    it('every domain carries three ordered tiers with content', () => {
        for (const catalog of [fixtures.catalogBuiltin(), fixtures.catalogWorked()]) {
            for (const domain of catalog.domains) {
                expect(domain.tiers.map((t) => t.level)).toEqual(TIERS);
                for (const tier of domain.tiers) {
                    expect(tier.practices.length).toBeGreaterThan(0);
                    expect(tier.metrics.length).toBeGreaterThan(0);
                }
            }
        }
    });

    it('metrics carry bands or rubric according to kind', () => {
        for (const domain of fixtures.catalogBuiltin().domains) {
            for (const tier of domain.tiers) {
                for (const metric of tier.metrics) {
                    if (metric.kind === 'quantitative') {
                        expect(metric.bands).toHaveLength(4);
                        expect(metric.direction).toBeDefined();
                        expect(metric.rubric).toBeUndefined();
                    } else {
                        expect(metric.rubric).toBeDefined();
                        expect(Object.keys(metric.rubric!).sort()).toEqual(['0', '1', '2', '3']);
                        expect(metric.bands).toBeUndefined();
                    }
                }
            }
        }
    });
});

describe('assessment fixtures', () => {
    it('selections reference catalog domains and pin the catalog', () => {
        const assessment = fixtures.assessmentWorked();
        const catalog = fixtures.catalogWorked();
        expect(assessment.catalog_id).toBe(catalog.catalog_id);
        expect(assessment.catalog_version).toBe(catalog.version);
        const known = new Set(catalog.domains.map((d) => d.domain_id));
        for (const selection of assessment.selections) {
            expect(known.has(selection.domain_id)).toBe(true);
            expect(TIERS).toContain(selection.target_tier);
        }
        expect(typeof assessment.entity_version).toBe('number');
    });

    it('quantitative evaluations store both raw value and banded points', () => {
        const assessment = fixtures.assessmentBuiltin();
        const dataSecurity = assessment.selections.find((s) => s.domain_id === 'data-security')!;
        const evaluation = dataSecurity.evaluations['encryption-coverage'];
        expect(evaluation.measured_value).toBe(92.0);
        expect(evaluation.points).toBe(3);
        expect(dataSecurity.target_tier).toBe('advanced');
    });

    it('completeness rows are consistent with their flags', () => {
        for (const doc of [fixtures.completenessWorked(), fixtures.completenessBuiltin()]) {
            for (const row of doc.domains) {
                const complete =
                    row.rated_practices === row.required_practices &&
                    row.evaluated_metrics === row.required_metrics;
                expect(row.complete).toBe(complete);
            }
            expect(doc.overall_complete).toBe(doc.domains.every((d) => d.complete));
        }
    });
});

describe('score report fixture', () => {
    it('carries the worked pipeline values', () => {
        const report = fixtures.scoreWorked();
        expect(report.oms.display).toBe('57.17');
        expect(report.overall_level).toBe('Managed');
        const governance = report.domains[0];
        expect(governance.domain_id).toBe('security-governance');
        expect(governance.pis.display).toBe('70.00');
        expect(governance.pis_numerator).toBe(7);
        expect(governance.pis_denominator).toBe(10);
        expect(governance.level).toBe('Optimized');
    });

    it('display strings stay within half-up rounding of the exact values', () => {
        const report = fixtures.scoreWorked();
        const close = (display: string, value: number) =>
            Math.abs(Number.parseFloat(display) - value) <= 0.005;
        expect(close(report.oms.display, report.oms.value)).toBe(true);
        for (const domain of report.domains) {
            expect(close(domain.pis.display, domain.pis.value)).toBe(true);
            expect(close(domain.mas.display, domain.mas.value)).toBe(true);
            expect(close(domain.ds.display, domain.ds.value)).toBe(true);
            expect(close(domain.weight.display, domain.weight.value)).toBe(true);
            expect(
                Math.abs(Number.parseFloat(domain.weight.percent_display) - 100 * domain.weight.value),
            ).toBeLessThanOrEqual(0.005);
            expect(LEVELS).toContain(domain.level);
        }
    });

    it('trace steps expose inputs and results', () => {
        const report = fixtures.scoreWorked();
        expect(report.trace.length).toBeGreaterThan(0);
        for (const step of report.trace) {
            expect(typeof step.name).toBe('string');
            expect(typeof step.operation).toBe('string');
            expect(step.inputs).toBeTypeOf('object');
            expect(['number', 'string']).toContain(typeof step.result);
        }
    });
});

describe('charts and gaps fixtures', () => {
    it('chart series are parallel and match the report exactly', () => {
        const charts = fixtures.chartsWorked();
        const report = fixtures.scoreWorked();
        expect(charts.labels).toHaveLength(report.domains.length);
        expect(charts.series.ds).toEqual(report.domains.map((d) => d.ds.value));
        expect(charts.series.pis).toEqual(report.domains.map((d) => d.pis.value));
        expect(charts.series.mas).toEqual(report.domains.map((d) => d.mas.value));
        expect(charts.overall.oms).toBe(report.oms.value);
        expect(charts.overall.level).toBe(report.overall_level);
    });

    it('gap items are ordered tier, then shortfall, then id', () => {
        for (const domain of fixtures.gapsWorked().domains) {
            for (let i = 1; i < domain.items.length; i += 1) {
                const a = domain.items[i - 1];
                const b = domain.items[i];
                const ordered =
                    tierRank(a.tier) < tierRank(b.tier) ||
                    (tierRank(a.tier) === tierRank(b.tier) &&
                        (a.shortfall > b.shortfall ||
                            (a.shortfall === b.shortfall && a.id <= b.id)));
                expect(ordered, `${a.id} before ${b.id}`).toBe(true);
            }
        }
    });
});

describe('problem document fixture', () => {
    it('maps an unknown elective to a 422 UnknownDomain problem', () => {
        const problem = fixtures.problemUnknownDomain();
        expect(problem.status).toBe(422);
        expect(problem.code).toBe('UnknownDomain');
        expect(problem.message.length).toBeGreaterThan(0);
    });
});

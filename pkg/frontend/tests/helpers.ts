/** Test utilities: fixture loading and data-score resolution. */

import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

import type {
    AssessmentDoc,
    CatalogDoc,
    ChartsDoc,
    CompletenessDoc,
    GapsDoc,
    ProblemDoc,
    ScoreReportDoc,
} from '../src/types.js';

const fixturesDir = join(dirname(fileURLToPath(import.meta.url)), 'fixtures');

export function loadFixture<T>(name: string): T {
    return JSON.parse(readFileSync(join(fixturesDir, name), 'utf-8')) as T;
}

export const fixtures = {
    catalogBuiltin: () => loadFixture<CatalogDoc>('catalog-builtin.json'),
    catalogWorked: () => loadFixture<CatalogDoc>('catalog-worked.json'),
    assessmentWorked: () => loadFixture<AssessmentDoc>('assessment-worked.json'),
    assessmentBuiltin: () => loadFixture<AssessmentDoc>('assessment-builtin.json'),
    completenessWorked: () => loadFixture<CompletenessDoc>('completeness-worked.json'),
    completenessBuiltin: () => loadFixture<CompletenessDoc>('completeness-builtin.json'),
    scoreWorked: () => loadFixture<ScoreReportDoc>('score-worked.json'),
    chartsWorked: () => loadFixture<ChartsDoc>('charts-worked.json'),
    gapsWorked: () => loadFixture<GapsDoc>('gaps-worked.json'),
    problemUnknownDomain: () => loadFixture<ProblemDoc>('problem-unknown-domain.json'),
};

/** Resolve a dotted path (numeric segments index arrays) inside a fixture. */
export function resolvePath(root: unknown, path: string): unknown {
    let current: unknown = root;
    for (const key of path.split('.')) {
        if (current === null || current === undefined) {
            throw new Error(`dead end at ${key} while resolving ${path}`);
        }
        const record = current as Record<string, unknown>;
        current = /^\d+$/.test(key)
            ? (current as unknown[])[Number(key)]
            : record[key];
    }
    return current;
}

export interface ScoreFixtures {
    score: ScoreReportDoc;
    charts: ChartsDoc;
    gaps: GapsDoc;
    assessment: AssessmentDoc;
    completeness: CompletenessDoc;
}

/** Resolve a prefixed data-score path ("score:domains.0.pis.display", ...). */
export function lookupScorePath(prefixed: string, docs: ScoreFixtures): unknown {
    const colon = prefixed.indexOf(':');
    const prefix = prefixed.slice(0, colon);
    const path = prefixed.slice(colon + 1);
    switch (prefix) {
        case 'score':
            return resolvePath(docs.score, path);
        case 'charts':
            return resolvePath(docs.charts, path);
        case 'gaps':
            return resolvePath(docs.gaps, path);
        case 'assessment': {
            const [domainId, ...rest] = path.split('.');
            const selection = docs.assessment.selections.find((s) => s.domain_id === domainId);
            return resolvePath(selection, rest.join('.'));
        }
        case 'completeness': {
            const [domainId, ...rest] = path.split('.');
            const row = docs.completeness.domains.find((d) => d.domain_id === domainId);
            return resolvePath(row, rest.join('.'));
        }
        default:
            throw new Error(`unknown data-score prefix in ${prefixed}`);
    }
}

export interface RenderedScore {
    path: string;
    text: string;
}

/** Every data-score span in a rendered view: its path and its visible text. */
export function extractScores(html: string): RenderedScore[] {
    const pattern = /<span[^>]*\bdata-score="([^"]+)"[^>]*>([^<]*)<\/span>/g;
    const scores: RenderedScore[] = [];
    for (const match of html.matchAll(pattern)) {
        scores.push({ path: match[1], text: match[2] });
    }
    return scores;
}

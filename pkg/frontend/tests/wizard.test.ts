/**
 * Wizard integrity: tier changes disable out-of-scope controls without
 * deleting entered values, reload reconstructs identical state from server
 * documents, and the results step is gated on completeness.
 */

import { describe, expect, it } from 'vitest';

import {
    applyAssessment,
    applyCompleteness,
    canEnter,
    initialState,
    serverProjection,
} from '../src/state.js';
import { renderMetricsStep, renderPracticesStep, renderStepNav } from '../src/views.js';
import type { AssessmentDoc } from '../src/types.js';
import { fixtures } from './helpers.js';

function lowerDataSecurityToBasic(assessment: AssessmentDoc): AssessmentDoc {
    // Structurally what the server returns after PUT target-tier: the tier
    // changes, ratings/evaluations are retained (see the service tests).
    const copy: AssessmentDoc = JSON.parse(JSON.stringify(assessment));
    const selection = copy.selections.find((s) => s.domain_id === 'data-security')!;
    selection.target_tier = 'basic';
    copy.entity_version += 1;
    return copy;
}

/** The details block for one domain, excluding every other domain's markup. */
function domainSection(html: string, name: string): string {
    const chunk = html
        .split('<details class="domain-block"')
        .find((part) => part.includes(`<summary>${name} `));
    expect(chunk, `no section for ${name}`).toBeDefined();
    return chunk!;
}

describe('tier toggling (advanced -> basic)', () => {
    const catalog = fixtures.catalogBuiltin();

    it('starts with the advanced tier editable and its rating visible', () => {
        const assessment = fixtures.assessmentBuiltin();
        const html = renderPracticesStep(catalog, assessment, null);
        const section = domainSection(html, 'Data Security');
        expect(section).not.toContain('data-out-of-scope');
        // the advanced-tier practice keeps its stored Not Implemented rating
        expect(section).toContain(
            'data-practice="field-level-protection" checked>',
        );
    });

    it('disables out-of-scope controls without deleting entered values', () => {
        const assessment = lowerDataSecurityToBasic(fixtures.assessmentBuiltin());
        const html = renderPracticesStep(catalog, assessment, null);
        const section = domainSection(html, 'Data Security');
        expect(section).toContain('data-out-of-scope="true"');
        // still checked (visible), but its radio is disabled
        expect(section).toContain(
            'data-practice="field-level-protection" checked disabled>',
        );
        // the stored rating survives in the server document itself
        const selection = assessment.selections.find((s) => s.domain_id === 'data-security')!;
        expect(selection.ratings['field-level-protection']).toEqual({ value: 0 });
    });

    it('keeps the quantitative measurement and its banded points visible', () => {
        const assessment = lowerDataSecurityToBasic(fixtures.assessmentBuiltin());
        const html = renderMetricsStep(catalog, assessment, null);
        const section = html.slice(html.indexOf('data-metric-id="encryption-coverage"'));
        expect(section).toContain('value="92"');
        expect(section).toContain(
            'data-score="assessment:data-security.evaluations.encryption-coverage.points">3</span>',
        );
    });
});

describe('reload reconstruction', () => {
    it('rebuilding state from the same server documents is identical', () => {
        const assessment = fixtures.assessmentBuiltin();
        const completeness = fixtures.completenessBuiltin();
        const catalog = fixtures.catalogBuiltin();

        let live = initialState();
        live = { ...live, catalog };
        live = applyAssessment(live, assessment);
        live = applyCompleteness(live, completeness);
        // a server round-trip later (tier change), then "reload":
        const updated = lowerDataSecurityToBasic(assessment);
        live = applyAssessment(live, updated);

        let reloaded = initialState();
        reloaded = { ...reloaded, catalog };
        reloaded = applyAssessment(reloaded, updated);
        reloaded = applyCompleteness(reloaded, completeness);

        expect(serverProjection(reloaded)).toEqual(serverProjection(live));
        expect(renderPracticesStep(catalog, reloaded.assessment!, reloaded.completeness)).toBe(
            renderPracticesStep(catalog, live.assessment!, live.completeness),
        );
    });
});

describe('results gating', () => {
    it('blocks results while incomplete and un-acknowledged', () => {
        let state = initialState();
        state = applyCompleteness(state, fixtures.completenessBuiltin()); // incomplete
        expect(canEnter(state, 'results')).toBe(false);
        expect(canEnter(state, 'weights')).toBe(true);
        const nav = renderStepNav(state);
        expect(nav).toMatch(/data-step="results" disabled/);
    });

    it('opens results after completeness or explicit acknowledgement', () => {
        let state = initialState();
        state = applyCompleteness(state, fixtures.completenessWorked()); // complete
        expect(canEnter(state, 'results')).toBe(true);

        let acked = initialState();
        acked = applyCompleteness(acked, fixtures.completenessBuiltin());
        acked = { ...acked, ackMissingAsZero: true };
        expect(canEnter(acked, 'results')).toBe(true);
    });
});

describe('entity versions', () => {
    it('tracks the server entity version for If-Match echoes', () => {
        let state = initialState();
        const assessment = fixtures.assessmentWorked();
        state = applyAssessment(state, assessment);
        expect(state.entityVersion).toBe(assessment.entity_version);
        const bumped = { ...assessment, entity_version: assessment.entity_version + 5 };
        state = applyAssessment(state, bumped);
        expect(state.entityVersion).toBe(assessment.entity_version + 5);
        expect(state.conflict).toBe(false);
    });
});

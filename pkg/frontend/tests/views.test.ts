/** Step views: domain locking, tri-state labels, rubric options, weights grid. */

import { describe, expect, it } from 'vitest';

import { initialState } from '../src/state.js';
import {
    renderBanner,
    renderDomainsStep,
    renderMetricsStep,
    renderPracticesStep,
    renderTiersStep,
    renderWeightsStep,
} from '../src/views.js';
import { fixtures } from './helpers.js';

describe('domain selection view', () => {
    it('locks the 7 cores and leaves 14 electives toggleable', () => {
        const html = renderDomainsStep(fixtures.catalogBuiltin(), null);
        const locked = html.match(/data-locked="true"/g) ?? [];
        expect(locked).toHaveLength(7);
        const checkboxes = html.match(/name="elective"/g) ?? [];
        expect(checkboxes).toHaveLength(21);
        expect(html).toContain('core — always assessed');
    });

    it('pre-checks existing selections for an open assessment', () => {
        const html = renderDomainsStep(fixtures.catalogBuiltin(), fixtures.assessmentBuiltin());
        const cloudRow = html.slice(html.indexOf('value="cloud-security"'));
        expect(cloudRow.slice(0, 120)).toContain('checked');
        const networkRow = html.slice(html.indexOf('value="network-security"'));
        expect(networkRow.slice(0, 120)).not.toContain('checked');
    });
});

describe('tier view', () => {
    it('renders one selector per selected domain with the current tier chosen', () => {
        const html = renderTiersStep(fixtures.catalogBuiltin(), fixtures.assessmentBuiltin());
        const selects = html.match(/data-action="set-tier"/g) ?? [];
        expect(selects).toHaveLength(8); // 7 cores + cloud-security
        const dataSecurity = html.slice(html.indexOf('data-domain="data-security"'));
        expect(dataSecurity.slice(0, 300)).toContain('<option value="advanced" selected>');
    });
});

describe('practices view', () => {
    it('uses the exact tri-state labels', () => {
        const html = renderPracticesStep(
            fixtures.catalogBuiltin(), fixtures.assessmentBuiltin(), null,
        );
        expect(html).toContain('Not Implemented');
        expect(html).toContain('Partially Implemented');
        expect(html).toContain('Fully Implemented');
    });

    it('shows per-domain progress from the completeness document', () => {
        const html = renderPracticesStep(
            fixtures.catalogBuiltin(),
            fixtures.assessmentBuiltin(),
            fixtures.completenessBuiltin(),
        );
        expect(html).toContain('data-score="completeness:data-security.rated_practices"');
    });
});

describe('metrics view', () => {
    it('presents rubric texts as the qualitative selector', () => {
        const catalog = fixtures.catalogWorked();
        const html = renderMetricsStep(catalog, fixtures.assessmentWorked(), null);
        const rubric = catalog.domains[0].tiers[0].metrics[0].rubric!;
        for (const level of ['3', '2', '1', '0'] as const) {
            expect(html).toContain(rubric[level]);
        }
    });

    it('quantitative metrics expose a numeric input with the unit', () => {
        const html = renderMetricsStep(
            fixtures.catalogBuiltin(), fixtures.assessmentBuiltin(), null,
        );
        const section = html.slice(html.indexOf('data-metric-id="encryption-coverage"'));
        expect(section.slice(0, 500)).toContain('type="number"');
        expect(section.slice(0, 500)).toContain('percent');
    });
});

describe('weights view', () => {
    it('renders the 4-factor grid over every selected domain with a skip option', () => {
        const html = renderWeightsStep(fixtures.catalogBuiltin(), fixtures.assessmentBuiltin());
        for (const title of [
            'Risk Impact', 'Compliance Requirement', 'Business Impact', 'Interdependency',
        ]) {
            expect(html).toContain(`<th>${title}</th>`);
        }
        const rows = html.match(/<tr><td>/g) ?? [];
        expect(rows).toHaveLength(8);
        expect(html).toContain('Skip — use equal weights');
    });

    it('shows stored factor scores for domains that have them', () => {
        const html = renderWeightsStep(fixtures.catalogWorked(), fixtures.assessmentWorked());
        const governanceRow = html.slice(html.indexOf('<td>Security Governance</td>'));
        expect(governanceRow.slice(0, 400)).toContain('<option value="3" selected>');
    });
});

describe('banners', () => {
    it('renders API problems as dismissible banners', () => {
        const problem = fixtures.problemUnknownDomain();
        const state = { ...initialState(), banner: `${problem.code}: ${problem.message}` };
        const html = renderBanner(state);
        expect(html).toContain('UnknownDomain');
        expect(html).toContain('data-action="dismiss-banner"');
    });

    it('renders version conflicts with a reload action', () => {
        const state = { ...initialState(), conflict: true };
        const html = renderBanner(state);
        expect(html).toContain('data-action="reload"');
    });
});

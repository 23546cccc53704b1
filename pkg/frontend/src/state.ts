/**
 * Wizard state. Server documents are the single source of truth: every
 * mutation round-trips through the API and the updated document replaces
 * the local copy, so reloading the page and refetching reconstructs the
 * exact same state.
 */

import type {
    AssessmentDoc,
    CatalogDoc,
    CompletenessDoc,
    DomainDoc,
    SelectionDoc,
    TierDoc,
    TierToken,
} from './types.js';
import { tierRank } from './types.js';

export type WizardStepId = 'domains' | 'tiers' | 'practices' | 'metrics' | 'weights' | 'results';

export const WIZARD_STEPS: { id: WizardStepId; title: string }[] = [
    { id: 'domains', title: 'Domains' },
    { id: 'tiers', title: 'Target tiers' },
    { id: 'practices', title: 'Practices' },
    { id: 'metrics', title: 'Metrics' },
    { id: 'weights', title: 'Weights' },
    { id: 'results', title: 'Results' },
];

export interface WizardState {
    step: WizardStepId;
    catalog: CatalogDoc | null;
    assessment: AssessmentDoc | null;
    completeness: CompletenessDoc | null;
    /** Entity version echoed to If-Match on mutations. */
    entityVersion: number;
    /** Set when the user accepts scoring an incomplete assessment as zeros. */
    ackMissingAsZero: boolean;
    /** True when the server reported a stale entity version (409/412). */
    conflict: boolean;
    banner: string | null;
}

export function initialState(): WizardState {
    return {
        step: 'domains',
        catalog: null,
        assessment: null,
        completeness: null,
        entityVersion: 0,
        ackMissingAsZero: false,
        conflict: false,
        banner: null,
    };
}

/** Fold a freshly fetched assessment document into the state. */
export function applyAssessment(state: WizardState, doc: AssessmentDoc): WizardState {
    return { ...state, assessment: doc, entityVersion: doc.entity_version, conflict: false };
}

export function applyCompleteness(state: WizardState, doc: CompletenessDoc): WizardState {
    return { ...state, completeness: doc };
}

/**
 * Steps before the results permit free navigation; results requires
 * server-confirmed completeness or an explicit missing-as-zero acknowledgement.
 */
export function canEnter(state: WizardState, step: WizardStepId): boolean {
    if (step !== 'results') {
        return true;
    }
    if (state.completeness?.overall_complete) {
        return true;
    }
    return state.ackMissingAsZero;
}

/** The server-derived projection; reload + refetch must reproduce it exactly. */
export function serverProjection(state: WizardState): {
    assessment: AssessmentDoc | null;
    completeness: CompletenessDoc | null;
    entityVersion: number;
} {
    return {
        assessment: state.assessment,
        completeness: state.completeness,
        entityVersion: state.entityVersion,
    };
}

// --- scope helpers (mirror the engine's cumulative-tier rule) -----------------

export function findDomain(catalog: CatalogDoc, domainId: string): DomainDoc | undefined {
    return catalog.domains.find((d) => d.domain_id === domainId);
}

export function findSelection(
    assessment: AssessmentDoc, domainId: string,
): SelectionDoc | undefined {
    return assessment.selections.find((s) => s.domain_id === domainId);
}

/** Tiers above the selection's target are out of scope: visible but disabled. */
export function tierOutOfScope(tier: TierDoc, target: TierToken): boolean {
    return tierRank(tier.level) > tierRank(target);
}

export function selectedDomains(catalog: CatalogDoc, assessment: AssessmentDoc): DomainDoc[] {
    const chosen = new Set(assessment.selections.map((s) => s.domain_id));
    return catalog.domains.filter((d) => chosen.has(d.domain_id));
}

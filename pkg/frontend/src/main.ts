/**
 * Wizard bootstrap and event wiring. Views are pure renderers; this module
 * owns the fetch-update-render loop and delegates DOM events by data-action.
 */

import { ApiClient, ApiError } from './api.js';
import {
    applyAssessment,
    applyCompleteness,
    canEnter,
    initialState,
    type WizardState,
    type WizardStepId,
} from './state.js';
import { renderBanner, renderStep, renderStepNav } from './views.js';
import type { ChartsDoc, FactorScoresDoc, GapsDoc, ScoreReportDoc } from './types.js';

const api = new ApiClient('');
const STORAGE_KEY = 'ccmf.assessment_id';

let state: WizardState = initialState();
let results: { report?: ScoreReportDoc; charts?: ChartsDoc; gaps?: GapsDoc } = {};

function appRoot(): HTMLElement {
    return document.getElementById('app')!;
}

function render(): void {
    const missingAsZero = state.ackMissingAsZero && !state.completeness?.overall_complete;
    const downloads = state.assessment
        ? {
              json: api.reportUrl(state.assessment.assessment_id, 'json', missingAsZero),
              csv: api.reportUrl(state.assessment.assessment_id, 'csv', missingAsZero),
          }
        : { json: '#', csv: '#' };
    appRoot().innerHTML =
        renderBanner(state) + renderStepNav(state) + renderStep(state, { ...results, downloads });
}

function showError(error: unknown): void {
    state = {
        ...state,
        banner: error instanceof ApiError ? `${error.problem.code}: ${error.problem.message}` : String(error),
        conflict: error instanceof ApiError && error.problem.code === 'VersionConflict',
    };
    render();
}

async function refreshFromServer(assessmentId: string): Promise<void> {
    const assessment = await api.getAssessment(assessmentId);
    state = applyAssessment(state, assessment);
    state = applyCompleteness(state, await api.getCompleteness(assessmentId));
    if (!state.catalog || state.catalog.catalog_id !== assessment.catalog_id) {
        state = {
            ...state,
            catalog: await api.getCatalog(`${assessment.catalog_id}@${assessment.catalog_version}`),
        };
    }
}

async function loadResults(): Promise<void> {
    if (!state.assessment) {
        return;
    }
    const id = state.assessment.assessment_id;
    const missingAsZero = state.ackMissingAsZero && !state.completeness?.overall_complete;
    const [report, charts, gaps] = await Promise.all([
        api.score(id, missingAsZero),
        api.charts(id, missingAsZero),
        api.gaps(id, missingAsZero),
    ]);
    results = { report, charts, gaps };
}

async function gotoStep(step: WizardStepId): Promise<void> {
    if (!canEnter(state, step)) {
        if (step === 'results') {
            const proceed = window.confirm(
                'The assessment is not complete. Score anyway, treating missing items as zero?',
            );
            if (!proceed) {
                return;
            }
            state = { ...state, ackMissingAsZero: true };
        } else {
            return;
        }
    }
    state = { ...state, step };
    if (step === 'results') {
        try {
            await loadResults();
        } catch (error) {
            if (error instanceof ApiError && error.problem.code === 'Incomplete') {
                // route back to the practices step with the gap highlighted
                state = { ...state, step: 'practices', banner: error.problem.message };
            } else {
                showError(error);
                return;
            }
        }
    }
    render();
}

async function mutate(run: () => Promise<void>): Promise<void> {
    try {
        await run();
        if (state.assessment) {
            state = applyCompleteness(
                state, await api.getCompleteness(state.assessment.assessment_id),
            );
        }
        state = { ...state, banner: null };
        render();
    } catch (error) {
        showError(error);
    }
}

function collectWeights(): Record<string, FactorScoresDoc> | null {
    const factors: Record<string, Partial<FactorScoresDoc>> = {};
    for (const select of appRoot().querySelectorAll<HTMLSelectElement>('[data-weight-factor]')) {
        if (!select.value) {
            continue;
        }
        const domain = select.dataset.domain!;
        factors[domain] = factors[domain] ?? {};
        (factors[domain] as Record<string, number>)[select.dataset.weightFactor!] =
            Number(select.value);
    }
    const complete = Object.values(factors).every(
        (f) => Object.keys(f).length === 4,
    );
    if (!complete || Object.keys(factors).length === 0) {
        return null;
    }
    return factors as Record<string, FactorScoresDoc>;
}

async function handleAction(target: HTMLElement): Promise<void> {
    const action = target.dataset.action!;
    const id = state.assessment?.assessment_id;
    switch (action) {
        case 'goto-step':
            await gotoStep(target.dataset.step as WizardStepId);
            break;
        case 'reload':
            if (id) {
                await mutate(async () => refreshFromServer(id));
            }
            break;
        case 'dismiss-banner':
            state = { ...state, banner: null };
            render();
            break;
        case 'save-domains': {
            const organisation =
                appRoot().querySelector<HTMLInputElement>('[name="organisation"]')?.value.trim() ||
                'Unnamed organisation';
            const electives = [
                ...appRoot().querySelectorAll<HTMLInputElement>(
                    '[name="elective"]:checked:not([data-locked])',
                ),
            ].map((box) => box.value);
            await mutate(async () => {
                const assessment = await api.createAssessment(organisation, electives);
                window.localStorage.setItem(STORAGE_KEY, assessment.assessment_id);
                state = applyAssessment({ ...state, step: 'tiers' }, assessment);
            });
            break;
        }
        case 'save-weights': {
            const factors = collectWeights();
            if (!factors) {
                state = { ...state, banner: 'Give every domain all four factor scores, or skip.' };
                render();
                return;
            }
            await mutate(async () => {
                state = applyAssessment(state, await api.setWeights(id!, factors, state.entityVersion));
            });
            break;
        }
        case 'skip-weights':
            await mutate(async () => {
                state = applyAssessment(state, await api.setWeights(id!, null, state.entityVersion));
            });
            break;
        default:
            break;
    }
}

async function handleChange(target: HTMLElement): Promise<void> {
    const action = target.dataset.action;
    const id = state.assessment?.assessment_id;
    if (!action || !id) {
        return;
    }
    const domain = target.dataset.domain!;
    switch (action) {
        case 'set-tier':
            await mutate(async () => {
                const tier = (target as HTMLSelectElement).value as 'basic' | 'intermediate' | 'advanced';
                state = applyAssessment(
                    state, await api.setTargetTier(id, domain, tier, state.entityVersion),
                );
            });
            break;
        case 'rate':
            await mutate(async () => {
                state = applyAssessment(
                    state,
                    await api.rate(
                        id, domain, target.dataset.practice!,
                        Number((target as HTMLInputElement).value), state.entityVersion,
                    ),
                );
            });
            break;
        case 'eval-quant': {
            const raw = (target as HTMLInputElement).value;
            if (raw === '') {
                return;
            }
            await mutate(async () => {
                state = applyAssessment(
                    state,
                    await api.evaluateQuantitative(
                        id, domain, target.dataset.metric!, Number(raw), state.entityVersion,
                    ),
                );
            });
            break;
        }
        case 'eval-qual':
            await mutate(async () => {
                state = applyAssessment(
                    state,
                    await api.evaluateQualitative(
                        id, domain, target.dataset.metric!,
                        Number((target as HTMLInputElement).value), state.entityVersion,
                    ),
                );
            });
            break;
        default:
            break;
    }
}

async function bootstrap(): Promise<void> {
    appRoot().addEventListener('click', (event) => {
        const target = (event.target as HTMLElement).closest<HTMLElement>('[data-action]');
        if (target && target.tagName === 'BUTTON') {
            void handleAction(target);
        }
    });
    appRoot().addEventListener('change', (event) => {
        void handleChange(event.target as HTMLElement);
    });

    try {
        const stored = window.localStorage.getItem(STORAGE_KEY);
        if (stored) {
            try {
                await refreshFromServer(stored);
                state = { ...state, step: 'tiers' };
            } catch {
                window.localStorage.removeItem(STORAGE_KEY);
            }
        }
        if (!state.catalog) {
            state = { ...state, catalog: await api.getCatalog('ccmf-builtin') };
        }
        render();
    } catch (error) {
        showError(error);
    }
}

void bootstrap();

/**
 * Pure view renderers: state in, HTML string out. No fetches, no DOM reads,
 * and crucially no score arithmetic; every number on screen is a string
 * from an API payload, tagged with a data-score path for the contract tests.
 */

import { groupedBarsSvg, radarSvg } from './charts.js';
import { escapeAttr, escapeHtml, levelBadge, scoreSpan, tierLabel } from './format.js';
import {
    findSelection,
    selectedDomains,
    tierOutOfScope,
    WIZARD_STEPS,
    type WizardState,
    type WizardStepId,
    canEnter,
} from './state.js';
import type {
    AssessmentDoc,
    CatalogDoc,
    ChartsDoc,
    CompletenessDoc,
    DomainBreakdownDoc,
    DomainDoc,
    GapsDoc,
    MetricDoc,
    ScoreReportDoc,
    SelectionDoc,
    TraceStepDoc,
} from './types.js';

const RATING_LABELS: Record<number, string> = {
    0: 'Not Implemented',
    1: 'Partially Implemented',
    2: 'Fully Implemented',
};

export function renderBanner(state: WizardState): string {
    if (state.conflict) {
        return (
            '<div class="banner banner-conflict" data-banner="conflict">' +
            'This assessment changed elsewhere. ' +
            '<button data-action="reload">Reload latest</button></div>'
        );
    }
    if (state.banner) {
        return (
            `<div class="banner banner-error" data-banner="error">${escapeHtml(state.banner)} ` +
            '<button data-action="dismiss-banner">Dismiss</button></div>'
        );
    }
    return '';
}

export function renderStepNav(state: WizardState): string {
    const items = WIZARD_STEPS.map(({ id, title }) => {
        const current = state.step === id ? ' step-current' : '';
        const enabled = canEnter(state, id);
        const disabled = enabled ? '' : ' disabled';
        return (
            `<button class="step-link${current}" data-action="goto-step" ` +
            `data-step="${id}"${disabled}>${escapeHtml(title)}</button>`
        );
    });
    return `<nav class="steps">${items.join('')}</nav>`;
}

// --- step: domains -----------------------------------------------------------

export function renderDomainsStep(catalog: CatalogDoc, assessment: AssessmentDoc | null): string {
    const chosen = new Set(assessment?.selections.map((s) => s.domain_id) ?? []);
    const row = (domain: DomainDoc): string => {
        const core = domain.kind === 'core';
        const checked = core || chosen.has(domain.domain_id) ? ' checked' : '';
        const locked = core ? ' disabled data-locked="true"' : '';
        return (
            `<label class="domain-row${core ? ' domain-core' : ''}">` +
            `<input type="checkbox" name="elective" value="${escapeAttr(domain.domain_id)}"` +
            `${checked}${locked}>` +
            `<span class="domain-name">${escapeHtml(domain.name)}</span>` +
            `<span class="domain-kind">${core ? 'core — always assessed' : 'elective'}</span>` +
            `<span class="domain-desc">${escapeHtml(domain.description)}</span></label>`
        );
    };
    const cores = catalog.domains.filter((d) => d.kind === 'core').map(row).join('');
    const electives = catalog.domains.filter((d) => d.kind === 'elective').map(row).join('');
    const orgField = assessment
        ? `<p class="org-line">Assessing <strong>${escapeHtml(assessment.organisation)}</strong></p>`
        : '<label class="org-field">Organisation ' +
          '<input type="text" name="organisation" placeholder="Who is being assessed?"></label>';
    return (
        `<section class="step-domains"><h2>Capability domains</h2>${orgField}` +
        `<h3>Core domains</h3><div class="domain-list">${cores}</div>` +
        `<h3>Elective domains</h3><div class="domain-list">${electives}</div>` +
        `<button class="primary" data-action="save-domains"${assessment ? ' disabled title="Electives are fixed once the assessment exists"' : ''}>` +
        'Start assessment</button></section>'
    );
}

// --- step: tiers -----------------------------------------------------------

export function renderTiersStep(catalog: CatalogDoc, assessment: AssessmentDoc): string {
    const rows = selectedDomains(catalog, assessment)
        .map((domain) => {
            const selection = findSelection(assessment, domain.domain_id)!;
            const options = (['basic', 'intermediate', 'advanced'] as const)
                .map((tier) => {
                    const selected = selection.target_tier === tier ? ' selected' : '';
                    return `<option value="${tier}"${selected}>${tierLabel(tier)}</option>`;
                })
                .join('');
            return (
                `<div class="tier-row"><span class="domain-name">${escapeHtml(domain.name)}</span>` +
                `<select data-action="set-tier" data-domain="${escapeAttr(domain.domain_id)}">` +
                `${options}</select></div>`
            );
        })
        .join('');
    return (
        '<section class="step-tiers"><h2>Target tier per domain</h2>' +
        '<p>Scope is cumulative: targeting Advanced includes Basic and Intermediate. ' +
        'Lowering a tier keeps entered values, they just leave scope.</p>' +
        `${rows}</section>`
    );
}

// --- step: practices ----------------------------------------------------------

function progressLine(completeness: CompletenessDoc | null, domainId: string): string {
    const row = completeness?.domains.find((d) => d.domain_id === domainId);
    if (!row) {
        return '';
    }
    const practices =
        scoreSpan(`completeness:${domainId}.rated_practices`, row.rated_practices, 'count') +
        ' / ' +
        scoreSpan(`completeness:${domainId}.required_practices`, row.required_practices, 'count');
    const metrics =
        scoreSpan(`completeness:${domainId}.evaluated_metrics`, row.evaluated_metrics, 'count') +
        ' / ' +
        scoreSpan(`completeness:${domainId}.required_metrics`, row.required_metrics, 'count');
    const done = row.complete ? ' progress-done' : '';
    return (
        `<span class="progress${done}">practices ${practices} · metrics ${metrics}</span>`
    );
}

export function renderPracticesStep(
    catalog: CatalogDoc,
    assessment: AssessmentDoc,
    completeness: CompletenessDoc | null,
): string {
    const sections = selectedDomains(catalog, assessment)
        .map((domain) => {
            const selection = findSelection(assessment, domain.domain_id)!;
            const tiers = domain.tiers
                .map((tier) => {
                    const out = tierOutOfScope(tier, selection.target_tier);
                    const hint = out
                        ? `<p class="scope-hint">Raise the target tier to ${tierLabel(tier.level)} to edit this tier.</p>`
                        : '';
                    const items = tier.practices
                        .map((practice) => renderPracticeControl(domain, selection, tier.level, practice.practice_id, practice.statement, out))
                        .join('');
                    return (
                        `<fieldset class="tier-block"${out ? ' disabled data-out-of-scope="true"' : ''}>` +
                        `<legend>${tierLabel(tier.level)}</legend>${hint}${items}</fieldset>`
                    );
                })
                .join('');
            return (
                `<details class="domain-block" open><summary>${escapeHtml(domain.name)} ` +
                `${progressLine(completeness, domain.domain_id)}</summary>${tiers}</details>`
            );
        })
        .join('');
    return `<section class="step-practices"><h2>Rate the practices</h2>${sections}</section>`;
}

function renderPracticeControl(
    domain: DomainDoc,
    selection: SelectionDoc,
    tier: string,
    practiceId: string,
    statement: string,
    outOfScope: boolean,
): string {
    const stored = selection.ratings[practiceId];
    const options = [0, 1, 2]
        .map((value) => {
            const checked = stored?.value === value ? ' checked' : '';
            const name = `rating:${domain.domain_id}:${practiceId}`;
            return (
                `<label class="tri-state"><input type="radio" name="${escapeAttr(name)}" ` +
                `value="${value}" data-action="rate" data-domain="${escapeAttr(domain.domain_id)}" ` +
                `data-practice="${escapeAttr(practiceId)}"${checked}${outOfScope ? ' disabled' : ''}>` +
                `${RATING_LABELS[value]}</label>`
            );
        })
        .join('');
    return (
        `<div class="practice" data-tier="${escapeAttr(tier)}" data-practice-id="${escapeAttr(practiceId)}">` +
        `<p class="statement">${escapeHtml(statement)}</p><div class="tri-states">${options}</div></div>`
    );
}

// --- step: metrics ------------------------------------------------------------

function renderMetricControl(
    domainId: string,
    selection: SelectionDoc,
    metric: MetricDoc,
    outOfScope: boolean,
): string {
    const stored = selection.evaluations[metric.metric_id];
    const disabled = outOfScope ? ' disabled' : '';
    let control: string;
    if (metric.kind === 'quantitative') {
        const value = stored?.measured_value !== undefined ? String(stored.measured_value) : '';
        const points =
            stored !== undefined
                ? '<span class="points-badge">' +
                  scoreSpan(
                      `assessment:${domainId}.evaluations.${metric.metric_id}.points`,
                      stored.points,
                  ) +
                  ' points</span>'
                : '<span class="points-badge points-pending">not evaluated</span>';
        control =
            `<div class="quant-control"><input type="number" step="any" value="${escapeAttr(value)}" ` +
            `data-action="eval-quant" data-domain="${escapeAttr(domainId)}" ` +
            `data-metric="${escapeAttr(metric.metric_id)}"${disabled}>` +
            `<span class="unit">${escapeHtml(metric.unit ?? '')}</span>${points}</div>`;
    } else {
        const rubric = metric.rubric!;
        control =
            '<div class="rubric-control">' +
            (['3', '2', '1', '0'] as const)
                .map((level) => {
                    const checked = stored?.points === Number(level) ? ' checked' : '';
                    const name = `evaluation:${domainId}:${metric.metric_id}`;
                    return (
                        `<label class="rubric-option"><input type="radio" name="${escapeAttr(name)}" ` +
                        `value="${level}" data-action="eval-qual" data-domain="${escapeAttr(domainId)}" ` +
                        `data-metric="${escapeAttr(metric.metric_id)}"${checked}${disabled}>` +
                        `<span class="rubric-points">${level}</span> ${escapeHtml(rubric[level])}</label>`
                    );
                })
                .join('') +
            '</div>';
    }
    return (
        `<div class="metric" data-metric-id="${escapeAttr(metric.metric_id)}">` +
        `<p class="statement">${escapeHtml(metric.description)}</p>${control}</div>`
    );
}

export function renderMetricsStep(
    catalog: CatalogDoc,
    assessment: AssessmentDoc,
    completeness: CompletenessDoc | null,
): string {
    const sections = selectedDomains(catalog, assessment)
        .map((domain) => {
            const selection = findSelection(assessment, domain.domain_id)!;
            const tiers = domain.tiers
                .map((tier) => {
                    const out = tierOutOfScope(tier, selection.target_tier);
                    const items = tier.metrics
                        .map((metric) => renderMetricControl(domain.domain_id, selection, metric, out))
                        .join('');
                    return (
                        `<fieldset class="tier-block"${out ? ' disabled data-out-of-scope="true"' : ''}>` +
                        `<legend>${tierLabel(tier.level)}</legend>${items}</fieldset>`
                    );
                })
                .join('');
            return (
                `<details class="domain-block" open><summary>${escapeHtml(domain.name)} ` +
                `${progressLine(completeness, domain.domain_id)}</summary>${tiers}</details>`
            );
        })
        .join('');
    return (
        '<section class="step-metrics"><h2>Evaluate the metrics</h2>' +
        '<p>Quantitative metrics take the raw measurement; the server derives the 0-3 points. ' +
        'Qualitative metrics offer the four rubric levels.</p>' +
        `${sections}</section>`
    );
}

// --- step: weights --------------------------------------------------------------

const FACTOR_COLUMNS: { key: string; title: string }[] = [
    { key: 'risk_impact', title: 'Risk Impact' },
    { key: 'compliance_requirement', title: 'Compliance Requirement' },
    { key: 'business_impact', title: 'Business Impact' },
    { key: 'interdependency', title: 'Interdependency' },
];

export function renderWeightsStep(catalog: CatalogDoc, assessment: AssessmentDoc): string {
    const header =
        '<tr><th>Domain</th>' +
        FACTOR_COLUMNS.map((c) => `<th>${escapeHtml(c.title)}</th>`).join('') +
        '</tr>';
    const rows = selectedDomains(catalog, assessment)
        .map((domain) => {
            const stored = assessment.weight_profile?.[domain.domain_id];
            const cells = FACTOR_COLUMNS.map(({ key }) => {
                const current = stored ? (stored as unknown as Record<string, number>)[key] : undefined;
                const options = [1, 2, 3]
                    .map((v) => `<option value="${v}"${current === v ? ' selected' : ''}>${v}</option>`)
                    .join('');
                const placeholder = current === undefined ? '<option value="" selected></option>' : '';
                return (
                    `<td><select data-weight-factor="${key}" data-domain="${escapeAttr(domain.domain_id)}">` +
                    `${placeholder}${options}</select></td>`
                );
            }).join('');
            return `<tr><td>${escapeHtml(domain.name)}</td>${cells}</tr>`;
        })
        .join('');
    return (
        '<section class="step-weights"><h2>Domain importance (1-3 per factor)</h2>' +
        '<p>Factor totals normalise into weights for the overall score.</p>' +
        `<table class="weights-grid"><thead>${header}</thead><tbody>${rows}</tbody></table>` +
        '<button class="primary" data-action="save-weights">Save weights</button> ' +
        '<button data-action="skip-weights">Skip — use equal weights</button></section>'
    );
}

// --- step: results ---------------------------------------------------------------

function domainCard(breakdown: DomainBreakdownDoc, index: number): string {
    const path = (field: string) => `score:domains.${index}.${field}`;
    return (
        `<article class="score-card" data-domain="${escapeAttr(breakdown.domain_id)}">` +
        `<h4>${escapeHtml(breakdown.domain_name)} ` +
        `<span class="tier-tag">${tierLabel(breakdown.target_tier)}</span></h4>` +
        `<dl><div><dt>PIS</dt><dd>${scoreSpan(path('pis.display'), breakdown.pis.display)}</dd></div>` +
        `<div><dt>MAS</dt><dd>${scoreSpan(path('mas.display'), breakdown.mas.display)}</dd></div>` +
        `<div><dt>DS</dt><dd>${scoreSpan(path('ds.display'), breakdown.ds.display)}</dd></div>` +
        `<div><dt>Weight</dt><dd>${scoreSpan(path('weight.percent_display'), breakdown.weight.percent_display)}%</dd></div></dl>` +
        levelBadge(path('level'), breakdown.level) +
        '</article>'
    );
}

function traceLine(step: TraceStepDoc, index: number, report: ScoreReportDoc): string {
    const at = (field: string) => `score:trace.${index}.${field}`;
    const inputs = step.inputs as Record<string, unknown>;
    const domainIndex = report.domains.findIndex((d) => d.domain_id === inputs.domain_id);
    const domain = domainIndex >= 0 ? report.domains[domainIndex] : null;
    switch (step.operation) {
        case 'practice_implementation_score':
            return (
                `<li>PIS = 100 × numerator ${scoreSpan(at('inputs.numerator'), String(inputs.numerator))}` +
                ` / denominator ${scoreSpan(at('inputs.denominator'), String(inputs.denominator))}` +
                ` = ${scoreSpan(`score:domains.${domainIndex}.pis.display`, domain!.pis.display)}</li>`
            );
        case 'metric_achievement_score':
            return (
                `<li>MAS = 100 × numerator ${scoreSpan(at('inputs.numerator'), String(inputs.numerator))}` +
                ` / denominator ${scoreSpan(at('inputs.denominator'), String(inputs.denominator))}` +
                ` = ${scoreSpan(`score:domains.${domainIndex}.mas.display`, domain!.mas.display)}</li>`
            );
        case 'domain_score':
            return (
                `<li>DS = (PIS + MAS) / 2 = ` +
                `${scoreSpan(`score:domains.${domainIndex}.ds.display`, domain!.ds.display)}</li>`
            );
        case 'maturity_level': {
            const resultPath = at('result');
            return `<li>Level threshold check → ${scoreSpan(resultPath, String(step.result))}</li>`;
        }
        case 'weight_factor_total':
            return (
                `<li>Importance total = ${scoreSpan(at('inputs.risk_impact'), String(inputs.risk_impact))}` +
                ` + ${scoreSpan(at('inputs.compliance_requirement'), String(inputs.compliance_requirement))}` +
                ` + ${scoreSpan(at('inputs.business_impact'), String(inputs.business_impact))}` +
                ` + ${scoreSpan(at('inputs.interdependency'), String(inputs.interdependency))}` +
                ` = ${scoreSpan(at('result'), String(step.result))}</li>`
            );
        case 'weight_normalise':
            return (
                `<li>Weight = ${scoreSpan(at('inputs.factor_total'), String(inputs.factor_total))}` +
                ` / ${scoreSpan(at('inputs.grand_total'), String(inputs.grand_total))}` +
                ` = ${scoreSpan(`score:domains.${domainIndex}.weight.display`, domain!.weight.display)}</li>`
            );
        case 'equal_weight':
            return (
                `<li>Weight = 1 / ${scoreSpan(at('inputs.domain_count'), String(inputs.domain_count))}` +
                ` = ${scoreSpan(`score:domains.${domainIndex}.weight.display`, domain!.weight.display)}` +
                `${step.note ? ` <em>(${escapeHtml(step.note)})</em>` : ''}</li>`
            );
        case 'overall_maturity_score':
            return (
                `<li>OMS = Σ weight × DS = ` +
                `${scoreSpan('score:oms.display', report.oms.display)}</li>`
            );
        default:
            return `<li>${escapeHtml(step.name)} → ${scoreSpan(at('result'), String(step.result))}</li>`;
    }
}

function tracePanel(report: ScoreReportDoc): string {
    const buckets = new Map<string, string[]>();
    const order: string[] = [];
    report.trace.forEach((step, index) => {
        const domainId = (step.inputs as Record<string, unknown>).domain_id;
        const key = typeof domainId === 'string' ? domainId : '__overall__';
        if (!buckets.has(key)) {
            buckets.set(key, []);
            order.push(key);
        }
        buckets.get(key)!.push(traceLine(step, index, report));
    });
    const sections = order
        .map((key) => {
            const title =
                key === '__overall__'
                    ? 'Overall maturity'
                    : report.domains.find((d) => d.domain_id === key)?.domain_name ?? key;
            return (
                `<details class="trace-domain" data-trace-domain="${escapeAttr(key)}">` +
                `<summary>${escapeHtml(title)}</summary><ul>${buckets.get(key)!.join('')}</ul></details>`
            );
        })
        .join('');
    return `<section class="trace-panel"><h3>Step-by-step calculation</h3>${sections}</section>`;
}

function gapsPanel(gaps: GapsDoc): string {
    const sections = gaps.domains
        .filter((domain) => domain.items.length > 0)
        .map((domain, di) => {
            const rows = domain.items
                .map(
                    (item, ii) =>
                        `<li>[${tierLabel(item.tier)}] ${item.kind} ${escapeHtml(item.id)}: ` +
                        scoreSpan(`gaps:domains.${di}.items.${ii}.current`, item.current) +
                        '/' +
                        scoreSpan(`gaps:domains.${di}.items.${ii}.maximum`, item.maximum) +
                        '</li>',
                )
                .join('');
            return `<details class="gap-domain"><summary>${escapeHtml(domain.domain_name)}</summary><ul>${rows}</ul></details>`;
        })
        .join('');
    return `<section class="gaps-panel"><h3>Gaps to close</h3>${sections || '<p>No gaps. Everything at full marks.</p>'}</section>`;
}

export function renderResultsStep(
    report: ScoreReportDoc,
    charts: ChartsDoc,
    gaps: GapsDoc,
    downloads: { json: string; csv: string },
): string {
    const cards = report.domains.map(domainCard).join('');
    const gauge =
        '<div class="oms-gauge"><span class="oms-label">Overall maturity score</span>' +
        `<span class="oms-value">${scoreSpan('score:oms.display', report.oms.display)}</span>` +
        levelBadge('score:overall_level', report.overall_level) +
        '</div>';
    const radar = radarSvg(charts.labels, charts.series.ds, charts.series_display.ds);
    const bars = groupedBarsSvg(
        charts.labels,
        charts.series.pis,
        charts.series.mas,
        charts.series_display.pis,
        charts.series_display.mas,
    );
    return (
        `<section class="step-results">${gauge}` +
        `<div class="score-cards">${cards}</div>` +
        `<div class="charts">${radar}${bars}</div>` +
        tracePanel(report) +
        gapsPanel(gaps) +
        `<div class="downloads"><a href="${escapeAttr(downloads.json)}" download="report.json">Download JSON</a> ` +
        `<a href="${escapeAttr(downloads.csv)}" download="report.csv">Download CSV</a></div>` +
        '</section>'
    );
}

// --- assembled page -----------------------------------------------------------

export function renderStep(
    state: WizardState,
    extras: {
        report?: ScoreReportDoc;
        charts?: ChartsDoc;
        gaps?: GapsDoc;
        downloads?: { json: string; csv: string };
    } = {},
): string {
    const { catalog, assessment } = state;
    if (!catalog) {
        return '<p class="loading">Loading catalog…</p>';
    }
    const step: WizardStepId = state.step;
    if (step === 'domains' || !assessment) {
        return renderDomainsStep(catalog, assessment);
    }
    switch (step) {
        case 'tiers':
            return renderTiersStep(catalog, assessment);
        case 'practices':
            return renderPracticesStep(catalog, assessment, state.completeness);
        case 'metrics':
            return renderMetricsStep(catalog, assessment, state.completeness);
        case 'weights':
            return renderWeightsStep(catalog, assessment);
        case 'results':
            if (!extras.report || !extras.charts || !extras.gaps || !extras.downloads) {
                return '<p class="loading">Scoring…</p>';
            }
            return renderResultsStep(extras.report, extras.charts, extras.gaps, extras.downloads);
        default:
            return '';
    }
}

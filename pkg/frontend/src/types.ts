/**
 * Types mirroring the assessment service's JSON payloads.
 * The contract tests check recorded fixtures against these shapes.
 */

export type TierToken = 'basic' | 'intermediate' | 'advanced';
export type MaturityLabel = 'Initial' | 'Managed' | 'Optimized';
export type DomainKindToken = 'core' | 'elective';

export const TIER_ORDER: TierToken[] = ['basic', 'intermediate', 'advanced'];

export function tierRank(tier: TierToken): number {
    return TIER_ORDER.indexOf(tier);
}

// --- catalog ---------------------------------------------------------------

export interface BandDoc {
    points: number;
    lower?: number;
    upper?: number;
}

export interface MetricDoc {
    metric_id: string;
    description: string;
    kind: 'quantitative' | 'qualitative';
    unit?: string;
    direction?: 'higher_is_better' | 'lower_is_better';
    bands?: BandDoc[];
    rubric?: Record<'3' | '2' | '1' | '0', string>;
}

export interface PracticeDoc {
    practice_id: string;
    statement: string;
}

export interface TierDoc {
    level: TierToken;
    practices: PracticeDoc[];
    metrics: MetricDoc[];
}

export interface DomainDoc {
    domain_id: string;
    name: string;
    kind: DomainKindToken;
    description: string;
    tiers: TierDoc[];
}

export interface CatalogDoc {
    catalog_id: string;
    version: string;
    title: string;
    illustrative: boolean;
    domains: DomainDoc[];
}

// --- assessment -------------------------------------------------------------

export interface RatingDoc {
    value: number; // 0 | 1 | 2
    note?: string;
}

export interface EvaluationDoc {
    points: number; // 0..3, band-derived for quantitative metrics
    measured_value?: number;
    note?: string;
}

export interface SelectionDoc {
    domain_id: string;
    target_tier: TierToken;
    ratings: Record<string, RatingDoc>;
    evaluations: Record<string, EvaluationDoc>;
}

export interface FactorScoresDoc {
    risk_impact: number;
    compliance_requirement: number;
    business_impact: number;
    interdependency: number;
}

export interface AssessmentDoc {
    format_version: string;
    assessment_id: string;
    organisation: string;
    catalog_id: string;
    catalog_version: string;
    created: string;
    updated: string;
    entity_version: number;
    selections: SelectionDoc[];
    weight_profile: Record<string, FactorScoresDoc> | null;
}

export interface CompletenessRowDoc {
    domain_id: string;
    required_practices: number;
    rated_practices: number;
    required_metrics: number;
    evaluated_metrics: number;
    complete: boolean;
}

export interface CompletenessDoc {
    overall_complete: boolean;
    domains: CompletenessRowDoc[];
}

// --- scoring ----------------------------------------------------------------

export interface ScoreNumber {
    value: number;
    display: string; // server-rounded, 2 decimals half-up
}

export interface WeightNumber extends ScoreNumber {
    percent_display: string;
}

export interface DomainBreakdownDoc {
    domain_id: string;
    domain_name: string;
    target_tier: TierToken;
    pis: ScoreNumber;
    mas: ScoreNumber;
    ds: ScoreNumber;
    level: MaturityLabel;
    weight: WeightNumber;
    pis_numerator: number;
    pis_denominator: number;
    mas_numerator: number;
    mas_denominator: number;
}

export interface TraceStepDoc {
    name: string;
    operation: string;
    inputs: Record<string, unknown>;
    result: number | string;
    note?: string;
}

export interface ScoreReportDoc {
    format_version: string;
    assessment_id: string;
    catalog_id: string;
    catalog_version: string;
    generated_at: string;
    oms: ScoreNumber;
    overall_level: MaturityLabel;
    domains: DomainBreakdownDoc[];
    trace: TraceStepDoc[];
}

export interface ChartsDoc {
    labels: string[];
    domain_ids: string[];
    series: { pis: number[]; mas: number[]; ds: number[] };
    series_display: { pis: string[]; mas: string[]; ds: string[] };
    overall: { oms: number; oms_display: string; level: MaturityLabel };
}

export interface GapItemDoc {
    kind: 'practice' | 'metric';
    id: string;
    tier: TierToken;
    current: number;
    maximum: number;
    shortfall: number;
}

export interface GapDomainDoc {
    domain_id: string;
    domain_name: string;
    items: GapItemDoc[];
}

export interface GapsDoc {
    assessment_id: string;
    domains: GapDomainDoc[];
}

// --- errors -----------------------------------------------------------------

export interface ProblemDoc {
    status: number;
    code: string;
    message: string;
    details: unknown;
}

/**
 * Typed client for the assessment service. All score arithmetic happens
 * server-side; this client only moves documents back and forth.
 */

import type {
    AssessmentDoc,
    CatalogDoc,
    ChartsDoc,
    CompletenessDoc,
    FactorScoresDoc,
    GapsDoc,
    ProblemDoc,
    ScoreReportDoc,
    TierToken,
} from './types.js';

export class ApiError extends Error {
    constructor(public problem: ProblemDoc) {
        super(problem.message);
        this.name = 'ApiError';
    }
}

async function parseProblem(response: Response): Promise<ProblemDoc> {
    try {
        return (await response.json()) as ProblemDoc;
    } catch {
        return {
            status: response.status,
            code: 'HttpError',
            message: `${response.status} ${response.statusText}`,
            details: null,
        };
    }
}

export class ApiClient {
    constructor(private base = '') {}

    private async request<T>(path: string, init: RequestInit = {}): Promise<T> {
        const response = await fetch(this.base + path, {
            headers: { 'Content-Type': 'application/json', ...(init.headers ?? {}) },
            ...init,
        });
        if (!response.ok) {
            throw new ApiError(await parseProblem(response));
        }
        if (response.status === 204) {
            return undefined as T;
        }
        return (await response.json()) as T;
    }

    private mutation<T>(path: string, body: unknown, entityVersion: number): Promise<T> {
        return this.request<T>(path, {
            method: 'PUT',
            body: JSON.stringify(body),
            headers: { 'If-Match': `"${entityVersion}"` },
        });
    }

    getCatalog(ref: string): Promise<CatalogDoc> {
        return this.request(`/api/catalogs/${encodeURIComponent(ref)}`);
    }

    createAssessment(organisation: string, electives: string[]): Promise<AssessmentDoc> {
        return this.request('/api/assessments', {
            method: 'POST',
            body: JSON.stringify({ organisation, electives }),
        });
    }

    getAssessment(id: string): Promise<AssessmentDoc> {
        return this.request(`/api/assessments/${id}`);
    }

    getCompleteness(id: string): Promise<CompletenessDoc> {
        return this.request(`/api/assessments/${id}/completeness`);
    }

    setTargetTier(
        id: string, domainId: string, tier: TierToken, entityVersion: number,
    ): Promise<AssessmentDoc> {
        return this.mutation(
            `/api/assessments/${id}/domains/${domainId}/target-tier`, { tier }, entityVersion,
        );
    }

    rate(
        id: string, domainId: string, practiceId: string, value: number, entityVersion: number,
    ): Promise<AssessmentDoc> {
        return this.mutation(
            `/api/assessments/${id}/domains/${domainId}/ratings/${practiceId}`,
            { value },
            entityVersion,
        );
    }

    evaluateQuantitative(
        id: string, domainId: string, metricId: string, measured: number, entityVersion: number,
    ): Promise<AssessmentDoc> {
        return this.mutation(
            `/api/assessments/${id}/domains/${domainId}/evaluations/${metricId}`,
            { measured_value: measured },
            entityVersion,
        );
    }

    evaluateQualitative(
        id: string, domainId: string, metricId: string, points: number, entityVersion: number,
    ): Promise<AssessmentDoc> {
        return this.mutation(
            `/api/assessments/${id}/domains/${domainId}/evaluations/${metricId}`,
            { points },
            entityVersion,
        );
    }

    setWeights(
        id: string, factors: Record<string, FactorScoresDoc> | null, entityVersion: number,
    ): Promise<AssessmentDoc> {
        return this.mutation(`/api/assessments/${id}/weights`, { factors }, entityVersion);
    }

    score(id: string, missingAsZero: boolean): Promise<ScoreReportDoc> {
        const query = missingAsZero ? '?missing_as_zero=true' : '';
        return this.request(`/api/assessments/${id}/score${query}`, { method: 'POST' });
    }

    charts(id: string, missingAsZero: boolean): Promise<ChartsDoc> {
        const query = missingAsZero ? '?missing_as_zero=true' : '';
        return this.request(`/api/assessments/${id}/charts${query}`);
    }

    gaps(id: string, missingAsZero: boolean): Promise<GapsDoc> {
        const query = missingAsZero ? '?missing_as_zero=true' : '';
        return this.request(`/api/assessments/${id}/gaps${query}`);
    }

    reportUrl(id: string, format: 'json' | 'csv', missingAsZero: boolean): string {
        const zero = missingAsZero ? '&missing_as_zero=true' : '';
        return `${this.base}/api/assessments/${id}/report?format=${format}${zero}`;
    }
}

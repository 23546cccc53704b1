/**
 * HTML string helpers. The wizard never computes score values: everything
 * displayed is a string copied from an API payload, wrapped with a
 * data-score path so contract tests can trace each number to its field.
 */

import type { MaturityLabel } from './types.js';

export function escapeHtml(text: string): string {
    return text
        .replace(/&/g, '&amp;')
        .replace(/</g, '&lt;')
        .replace(/>/g, '&gt;');
}

export function escapeAttr(text: string): string {
    return escapeHtml(text).replace(/"/g, '&quot;');
}

/** A displayed score value, traceable to `path` inside an API fixture. */
export function scoreSpan(path: string, display: string | number, cssClass = 'score'): string {
    return `<span class="${cssClass}" data-score="${escapeAttr(path)}">${escapeHtml(String(display))}</span>`;
}

const BADGE_CLASS: Record<MaturityLabel, string> = {
    Initial: 'badge badge-initial',
    Managed: 'badge badge-managed',
    Optimized: 'badge badge-optimized',
};

/** Level badge; colour class maps 1:1 to the three maturity levels. */
export function levelBadge(path: string, level: MaturityLabel): string {
    return `<span class="${BADGE_CLASS[level]}" data-score="${escapeAttr(path)}">${level}</span>`;
}

export function tierLabel(token: string): string {
    return token.charAt(0).toUpperCase() + token.slice(1);
}

// Lint marker model and the debounce used for live linting. Linting is
// server-side (one source of truth for the vocabulary); this module only
// shapes the response for display and tolerates endpoint failures.

import type { LintIssue, LintReport, SectionName } from './types.js';

export interface LintMarker {
    section: SectionName | null;
    span: string;
    kind: LintIssue['issue'];
    message: string;
}

const KIND_TEXT: Record<LintIssue['issue'], string> = {
    camera_relative_description:
        'camera-relative wording; use a compass direction',
    non_canonical_spatial_term:
        'non-canonical spatial term; use the shared vocabulary',
    missing_task_section: 'section is empty',
};

export function buildMarkers(report: LintReport): LintMarker[] {
    return report.issues.map((issue) => ({
        section: (issue.section as SectionName | null) ?? null,
        span: issue.span,
        kind: issue.issue,
        message: issue.suggestion
            ? `${KIND_TEXT[issue.issue]} (try: ${issue.suggestion})`
            : KIND_TEXT[issue.issue],
    }));
}

export function markersForSection(
    markers: LintMarker[],
    section: SectionName,
): LintMarker[] {
    return markers.filter((m) => m.section === section);
}

/**
 * Trailing-edge debounce: the wrapped call runs once the caller has been
 * quiet for `delayMs`. Each call supersedes the previous pending one.
 */
export function debounce<A extends unknown[]>(
    fn: (...args: A) => void,
    delayMs: number,
): (...args: A) => void {
    let timer: ReturnType<typeof setTimeout> | null = null;
    return (...args: A) => {
        if (timer !== null) {
            clearTimeout(timer);
        }
        timer = setTimeout(() => {
            timer = null;
            fn(...args);
        }, delayMs);
    };
}

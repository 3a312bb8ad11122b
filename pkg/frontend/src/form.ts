// Annotation form state: five task sections, completeness gating, and
// payload construction. Client-side checks mirror the server's
// validation for convenience; the server stays authoritative.

import { SECTIONS, type AnnotationPayload, type SectionName } from './types.js';

export type FormValues = Record<SectionName, string>;

export function emptyForm(): FormValues {
    return {
        perception: '',
        prediction: '',
        cot_reasoning: '',
        final_action: '',
        explanation: '',
    };
}

export function missingSections(values: FormValues): SectionName[] {
    return SECTIONS.filter((name) => values[name].trim() === '');
}

/** Submit stays disabled while any section is empty. */
export function isComplete(values: FormValues): boolean {
    return missingSections(values).length === 0;
}

export function buildPayload(
    values: FormValues,
    annotatorId: string,
): AnnotationPayload {
    const payload = {} as AnnotationPayload;
    for (const name of SECTIONS) {
        payload[name] = values[name];
    }
    payload.annotator_id = annotatorId;
    payload.created_at = new Date().toISOString();
    return payload;
}

/**
 * Which section to focus after a server-side rejection; falls back to
 * the first incomplete section when the error names no field.
 */
export function focusTarget(
    values: FormValues,
    errorField: string | null,
): SectionName | null {
    if (errorField && (SECTIONS as readonly string[]).includes(errorField)) {
        return errorField as SectionName;
    }
    return missingSections(values)[0] ?? null;
}

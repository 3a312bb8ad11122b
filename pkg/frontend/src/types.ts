// Wire types mirroring the annotation service API.

export type SceneStatus = 'pending' | 'draft' | 'submitted';

export interface SceneSummary {
    scene_id: string;
    image: string;
    status: SceneStatus;
    pedestrian_count: number;
}

export interface QaTurn {
    question: string;
    answer: string;
    round: number;
}

export interface Overlay {
    track_id: string;
    bbox: [number, number, number, number];
    color: string;
}

export interface SceneBundle {
    scene_id: string;
    image: string;
    status: SceneStatus;
    round1: QaTurn[];
    overlays: Overlay[];
    annotation: AnnotationPayload | null;
}

export const SECTIONS = [
    'perception',
    'prediction',
    'cot_reasoning',
    'final_action',
    'explanation',
] as const;

export type SectionName = (typeof SECTIONS)[number];

export const SECTION_TITLES: Record<SectionName, string> = {
    perception: 'Perception',
    prediction: 'Prediction',
    cot_reasoning: 'CoT Reasoning',
    final_action: 'Final Action',
    explanation: 'Explanation',
};

export type AnnotationPayload = Record<SectionName, string> & {
    annotator_id?: string;
    created_at?: string;
};

export interface LintIssue {
    span: string;
    issue:
        | 'non_canonical_spatial_term'
        | 'camera_relative_description'
        | 'missing_task_section';
    suggestion: string | null;
    section: string | null;
}

export interface LintReport {
    issues: LintIssue[];
}

export interface SubmitReply {
    scene_id: string;
    revision: number;
    status: SceneStatus;
    lint: LintReport;
}

export interface ApiError {
    code: string;
    field: string | null;
    message: string;
}

// Thin fetch client for the annotation service. The fetch function is
// injectable so tests can stub transport failures.

import type {
    AnnotationPayload,
    ApiError,
    LintReport,
    SceneBundle,
    SceneStatus,
    SceneSummary,
    SubmitReply,
} from './types.js';

export class ServiceError extends Error {
    readonly status: number;
    readonly body: ApiError | null;

    constructor(status: number, body: ApiError | null) {
        super(body?.message ?? `service returned ${status}`);
        this.status = status;
        this.body = body;
    }

    get field(): string | null {
        return this.body?.field ?? null;
    }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
    readonly baseUrl: string;
    private readonly fetchFn: FetchLike;

    constructor(baseUrl: string, fetchFn: FetchLike = fetch) {
        this.baseUrl = baseUrl.replace(/\/+$/, '');
        this.fetchFn = fetchFn;
    }

    private async request<T>(path: string, init?: RequestInit): Promise<T> {
        const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
        if (!response.ok) {
            let body: ApiError | null = null;
            try {
                body = (await response.json()) as ApiError;
            } catch {
                body = null;
            }
            throw new ServiceError(response.status, body);
        }
        return (await response.json()) as T;
    }

    async listScenes(status?: SceneStatus): Promise<SceneSummary[]> {
        const query = status ? `?status=${encodeURIComponent(status)}` : '';
        const body = await this.request<{ scenes: SceneSummary[] }>(
            `/scenes${query}`,
        );
        return body.scenes;
    }

    getScene(sceneId: string): Promise<SceneBundle> {
        return this.request<SceneBundle>(
            `/scenes/${encodeURIComponent(sceneId)}`,
        );
    }

    lint(sceneId: string, draft: Partial<AnnotationPayload>): Promise<LintReport> {
        return this.request<LintReport>(
            `/scenes/${encodeURIComponent(sceneId)}/lint`,
            {
                method: 'POST',
                headers: { 'Content-Type': 'application/json' },
                body: JSON.stringify(draft),
            },
        );
    }

    submit(sceneId: string, payload: AnnotationPayload): Promise<SubmitReply> {
        return this.request<SubmitReply>(
            `/scenes/${encodeURIComponent(sceneId)}/annotation`,
            {
                method: 'POST',
                headers: { 'Content-Type': 'application/json' },
                body: JSON.stringify(payload),
            },
        );
    }

    async exportAnnotations(): Promise<string> {
        const response = await this.fetchFn(`${this.baseUrl}/export`);
        if (!response.ok) {
            throw new ServiceError(response.status, null);
        }
        return response.text();
    }
}

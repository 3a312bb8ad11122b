// Scene queue navigation. Ordering always mirrors the service's
// list_scenes (scene_id ascending); next/previous walk the pending
// subset and wrap around; the cursor survives reloads via storage.

import type { SceneSummary } from './types.js';

export interface CursorStorage {
    load(): string | null;
    save(sceneId: string): void;
}

export class MemoryCursorStorage implements CursorStorage {
    private value: string | null = null;

    load(): string | null {
        return this.value;
    }

    save(sceneId: string): void {
        this.value = sceneId;
    }
}

export function pendingQueue(scenes: SceneSummary[]): SceneSummary[] {
    return scenes
        .filter((s) => s.status === 'pending')
        .sort((a, b) => a.scene_id.localeCompare(b.scene_id));
}

export class SceneQueue {
    private scenes: SceneSummary[] = [];
    private cursor: string | null = null;
    private readonly storage: CursorStorage;

    constructor(storage: CursorStorage = new MemoryCursorStorage()) {
        this.storage = storage;
        this.cursor = this.storage.load();
    }

    setScenes(scenes: SceneSummary[]): void {
        this.scenes = [...scenes].sort((a, b) =>
            a.scene_id.localeCompare(b.scene_id),
        );
        if (this.cursor && !this.scenes.some((s) => s.scene_id === this.cursor)) {
            this.cursor = null;
        }
    }

    get pending(): SceneSummary[] {
        return pendingQueue(this.scenes);
    }

    get pendingCount(): number {
        return this.pending.length;
    }

    get current(): string | null {
        return this.cursor;
    }

    /** Position the cursor, persisting it for the next session. */
    goTo(sceneId: string): void {
        this.cursor = sceneId;
        this.storage.save(sceneId);
    }

    /**
     * The next pending scene after the cursor, wrapping to the first
     * pending after the last; null when nothing is pending.
     */
    next(): SceneSummary | null {
        return this.step(+1);
    }

    previous(): SceneSummary | null {
        return this.step(-1);
    }

    /** Resume where the annotator left off, or at the first pending scene. */
    resume(): SceneSummary | null {
        if (this.cursor) {
            const scene = this.scenes.find((s) => s.scene_id === this.cursor);
            if (scene) {
                return scene;
            }
        }
        return this.pending[0] ?? null;
    }

    private step(direction: 1 | -1): SceneSummary | null {
        const pending = this.pending;
        if (pending.length === 0) {
            return null;
        }
        if (this.cursor === null) {
            const landing = direction === 1
                ? pending[0]!
                : pending[pending.length - 1]!;
            this.goTo(landing.scene_id);
            return landing;
        }
        // index of the first pending scene strictly after the cursor
        // (the cursor itself may be a submitted scene, absent from pending)
        let after = pending.findIndex(
            (s) => s.scene_id.localeCompare(this.cursor!) > 0,
        );
        if (after < 0) {
            after = 0; // wrap: everything pending sorts before the cursor
        }
        let index: number;
        if (direction === 1) {
            index = after;
        } else {
            index = (after - 1 + pending.length) % pending.length;
            // when the cursor is itself pending, "previous" must skip it
            if (pending[index]!.scene_id === this.cursor) {
                index = (index - 1 + pending.length) % pending.length;
            }
        }
        const landing = pending[index]!;
        this.goTo(landing.scene_id);
        return landing;
    }
}

// Browser entry: wires the queue, scene view, form, and live lint to the
// annotation service. Round-1 content is strictly read-only here.

import { ApiClient, ServiceError } from './api.js';
import { buildPayload, emptyForm, focusTarget, isComplete, type FormValues } from './form.js';
import { buildMarkers, debounce, markersForSection, type LintMarker } from './lint.js';
import { legendEntries, toOverlayBoxes } from './overlay.js';
import { SceneQueue, type CursorStorage } from './queue.js';
import {
    SECTIONS,
    SECTION_TITLES,
    type SceneBundle,
    type SectionName,
} from './types.js';

const LINT_DEBOUNCE_MS = 400;

function serviceBaseUrl(): string {
    const param = new URLSearchParams(window.location.search).get('service');
    if (param) {
        window.localStorage.setItem('pedvqa.service', param);
        return param;
    }
    return window.localStorage.getItem('pedvqa.service')
        ?? 'http://127.0.0.1:8777';
}

class LocalCursorStorage implements CursorStorage {
    load(): string | null {
        return window.localStorage.getItem('pedvqa.cursor');
    }

    save(sceneId: string): void {
        window.localStorage.setItem('pedvqa.cursor', sceneId);
    }
}

function el<T extends HTMLElement>(id: string): T {
    const node = document.getElementById(id);
    if (!node) {
        throw new Error(`missing element #${id}`);
    }
    return node as T;
}

class Workbench {
    private readonly api = new ApiClient(serviceBaseUrl());
    private readonly queue = new SceneQueue(new LocalCursorStorage());
    private scene: SceneBundle | null = null;
    private values: FormValues = emptyForm();
    private readonly textareas = new Map<SectionName, HTMLTextAreaElement>();
    private readonly markerLists = new Map<SectionName, HTMLElement>();
    private readonly requestLint = debounce(() => {
        void this.lintNow();
    }, LINT_DEBOUNCE_MS);

    async start(): Promise<void> {
        this.buildForm();
        this.bindKeys();
        el<HTMLButtonElement>('retry').addEventListener('click', () => {
            void this.refresh();
        });
        el<HTMLButtonElement>('next').addEventListener('click', () => {
            void this.advance(+1);
        });
        el<HTMLButtonElement>('prev').addEventListener('click', () => {
            void this.advance(-1);
        });
        el<HTMLButtonElement>('submit').addEventListener('click', () => {
            void this.submit();
        });
        await this.refresh();
    }

    private async refresh(): Promise<void> {
        try {
            const scenes = await this.api.listScenes();
            this.queue.setScenes(scenes);
            el('banner').hidden = true;
        } catch {
            el('banner').hidden = false;
            return;
        }
        const landing = this.queue.resume();
        if (landing) {
            await this.open(landing.scene_id);
        } else {
            this.renderEmptyQueue();
        }
        this.renderQueueState();
    }

    private async advance(direction: 1 | -1): Promise<void> {
        const scenes = await this.api.listScenes();
        this.queue.setScenes(scenes);
        const landing = direction === 1 ? this.queue.next() : this.queue.previous();
        if (landing) {
            await this.open(landing.scene_id);
        } else {
            this.renderEmptyQueue();
        }
        this.renderQueueState();
    }

    private async open(sceneId: string): Promise<void> {
        try {
            this.scene = await this.api.getScene(sceneId);
            el('banner').hidden = true;
        } catch {
            el('banner').hidden = false;
            return;
        }
        this.queue.goTo(sceneId);
        this.values = emptyForm();
        const stored = this.scene.annotation;
        if (stored) {
            for (const name of SECTIONS) {
                this.values[name] = stored[name] ?? '';
            }
        }
        this.renderScene();
        this.renderForm();
        this.requestLint();
    }

    private renderScene(): void {
        const scene = this.scene;
        if (!scene) {
            return;
        }
        el('scene-id').textContent = scene.scene_id;
        const badge = el('status');
        badge.textContent = scene.status;
        badge.className = `badge ${scene.status}`;

        const image = el<HTMLImageElement>('scene-image');
        image.src = `${this.api.baseUrl}/images/${scene.image}`;
        image.alt = scene.scene_id;

        const layer = el('overlays');
        layer.replaceChildren();
        const boxes = toOverlayBoxes(scene.overlays, 640, 480);
        for (const box of boxes) {
            const div = document.createElement('div');
            div.className = 'bbox';
            div.style.borderColor = box.color;
            div.style.left = `${box.leftPct}%`;
            div.style.top = `${box.topPct}%`;
            div.style.width = `${box.widthPct}%`;
            div.style.height = `${box.heightPct}%`;
            div.title = `track ${box.trackId}`;
            layer.appendChild(div);
        }

        const legend = el('legend');
        legend.replaceChildren();
        for (const entry of legendEntries(scene.overlays)) {
            const item = document.createElement('span');
            item.className = 'legend-entry';
            const swatch = document.createElement('span');
            swatch.className = 'swatch';
            swatch.style.backgroundColor = entry.color;
            item.append(swatch, ` ${entry.color} = track ${entry.trackId}`);
            legend.appendChild(item);
        }

        const panel = el('round1');
        panel.replaceChildren();
        for (const turn of scene.round1) {
            const q = document.createElement('p');
            q.className = 'question';
            q.textContent = `Q: ${turn.question}`;
            const a = document.createElement('p');
            a.className = 'answer';
            a.textContent = `A: ${turn.answer}`;
            panel.append(q, a);
        }
    }

    private renderQueueState(): void {
        el('pending-count').textContent = String(this.queue.pendingCount);
    }

    private renderEmptyQueue(): void {
        this.scene = null;
        el('scene-id').textContent = 'queue empty';
        el('status').textContent = 'all scenes submitted';
        el('round1').replaceChildren();
        el('overlays').replaceChildren();
        el('legend').replaceChildren();
    }

    private buildForm(): void {
        const form = el('form-sections');
        for (const name of SECTIONS) {
            const wrapper = document.createElement('div');
            wrapper.className = 'section';
            const label = document.createElement('label');
            label.textContent = SECTION_TITLES[name];
            label.htmlFor = `field-${name}`;
            const area = document.createElement('textarea');
            area.id = `field-${name}`;
            area.rows = 3;
            area.addEventListener('input', () => {
                this.values[name] = area.value;
                this.renderSubmitState();
                this.requestLint();
            });
            const markers = document.createElement('ul');
            markers.className = 'markers';
            wrapper.append(label, area, markers);
            form.appendChild(wrapper);
            this.textareas.set(name, area);
            this.markerLists.set(name, markers);
        }
    }

    private renderForm(): void {
        for (const name of SECTIONS) {
            const area = this.textareas.get(name)!;
            area.value = this.values[name];
        }
        this.renderSubmitState();
    }

    private renderSubmitState(): void {
        el<HTMLButtonElement>('submit').disabled =
            !this.scene || !isComplete(this.values);
    }

    private renderMarkers(markers: LintMarker[]): void {
        for (const name of SECTIONS) {
            const list = this.markerLists.get(name)!;
            list.replaceChildren();
            for (const marker of markersForSection(markers, name)) {
                const item = document.createElement('li');
                item.className = `marker ${marker.kind}`;
                item.textContent = marker.span
                    ? `"${marker.span}": ${marker.message}`
                    : marker.message;
                list.appendChild(item);
            }
        }
    }

    private async lintNow(): Promise<void> {
        if (!this.scene) {
            return;
        }
        try {
            const report = await this.api.lint(this.scene.scene_id, this.values);
            this.renderMarkers(buildMarkers(report));
        } catch {
            // lint failures degrade to no markers and never block typing
            this.renderMarkers([]);
        }
    }

    private async submit(): Promise<void> {
        if (!this.scene || !isComplete(this.values)) {
            return;
        }
        const payload = buildPayload(this.values, 'workbench');
        try {
            const reply = await this.api.submit(this.scene.scene_id, payload);
            el('toast').textContent =
                `saved ${reply.scene_id} as revision ${reply.revision}`;
            await this.advance(+1);
        } catch (error) {
            if (error instanceof ServiceError) {
                el('toast').textContent = error.message;
                const target = focusTarget(this.values, error.field);
                if (target) {
                    this.textareas.get(target)?.focus();
                }
            } else {
                el('banner').hidden = false;
            }
        }
    }

    private bindKeys(): void {
        document.addEventListener('keydown', (event) => {
            if (event.ctrlKey && event.key === 'Enter') {
                event.preventDefault();
                void this.submit();
                return;
            }
            if (event.altKey && event.key >= '1' && event.key <= '5') {
                event.preventDefault();
                const name = SECTIONS[Number(event.key) - 1]!;
                this.textareas.get(name)?.focus();
                return;
            }
            const inField = event.target instanceof HTMLTextAreaElement;
            if (!inField && event.key === 'n') {
                void this.advance(+1);
            } else if (!inField && event.key === 'p') {
                void this.advance(-1);
            }
        });
    }
}

void new Workbench().start();

/**
 * The Collaboration Spheres client.
 *
 * One center user, three concentric rings: blue holds the dropped context
 * exemplars, gray the context-driven recommendations, white the baseline
 * recommendations. Users drag people or research objects from the side
 * lists into the center's proximity to steer the gray ring, remove them
 * with a right-click (or the Delete key on a focused node), inspect any
 * entity in the detail panel, and read the full explanation report.
 *
 * Ring contents and order always mirror the latest service response; the
 * scene is a pure function of that response and the current selection.
 */

import { ApiClient, ApiError, FetchLike } from './api.js';
import { DEFAULT_GEOMETRY, SceneGeometry, placeRing } from './layout.js';
import { EntityRef, RelationsPayload, SphereNode, SpheresPayload } from './types.js';
import { Selection, SphereViewModel, buildViewModel, starIcons } from './viewmodel.js';

const SVG_NS = 'http://www.w3.org/2000/svg';
const LIST_PAGE_SIZE = 50;

export interface AppOptions {
  baseUrl: string;
  centerId: string;
  document: Document;
  fetchFn?: FetchLike;
  geometry?: SceneGeometry;
}

interface ListSpec {
  key: keyof Pick<
    RelationsPayload,
    'friends' | 'second_degree_friends' | 'own_ros' | 'friends_ros'
  >;
  title: string;
}

const LISTS: ListSpec[] = [
  { key: 'friends', title: 'Friends' },
  { key: 'second_degree_friends', title: '2nd friends' },
  { key: 'own_ros', title: 'My ROs' },
  { key: 'friends_ros', title: "Friend's ROs" },
];

export class SpheresApp {
  readonly api: ApiClient;
  private readonly doc: Document;
  private readonly geometry: SceneGeometry;
  private readonly centerId: string;

  private sessionId = '';
  private centerLabel = '';
  private spheres: SpheresPayload = { white: [], blue: [], gray: [] };
  private selection: Selection | null = null;
  private relations: RelationsPayload | null = null;
  // Context mutations are serialized: at most one in flight, rest queued.
  private mutationChain: Promise<void> = Promise.resolve();

  constructor(options: AppOptions) {
    this.api = new ApiClient(options.baseUrl, options.fetchFn);
    this.doc = options.document;
    this.geometry = options.geometry ?? DEFAULT_GEOMETRY;
    this.centerId = options.centerId;
  }

  /** Fetch the center user, open a session and draw the initial scene. */
  async start(): Promise<void> {
    const user = await this.api.user(this.centerId);
    this.centerLabel = user.payload.name || user.payload.id;
    const session = await this.api.openSession(this.centerId);
    this.sessionId = session.session_id;
    this.spheres = session.spheres;
    this.relations = await this.api.relations(this.centerId);
    this.renderLists();
    this.render();
  }

  viewModel(): SphereViewModel {
    return buildViewModel(this.sessionId, this.centerId, this.spheres, this.selection);
  }

  // -- context mutations -----------------------------------------------------

  /** Queue a context addition (triggered by dropping a list item). */
  dropItem(kind: 'user' | 'ro', id: string): Promise<void> {
    return this.enqueue(async () => {
      this.spheres = await this.api.addContext(kind, id);
      this.render();
    });
  }

  /** Queue a context removal (right-click or Delete on a blue node). */
  removeItem(id: string): Promise<void> {
    return this.enqueue(async () => {
      this.spheres = await this.api.removeContext(id);
      this.render();
    });
  }

  private enqueue(run: () => Promise<void>): Promise<void> {
    const next = this.mutationChain.then(run).catch((error) => {
      this.showNotice(
        error instanceof ApiError ? error.problem.detail : String(error),
      );
    });
    this.mutationChain = next;
    return next;
  }

  /** Resolves once every queued context mutation has settled. */
  async idle(): Promise<void> {
    await this.mutationChain;
  }

  // -- selection, detail, report ----------------------------------------------

  async showDetail(kind: string, id: string): Promise<void> {
    this.selection = { kind, id };
    try {
      const payload = await this.api.entity(kind, id);
      const panel = this.require('detail');
      panel.textContent = JSON.stringify(payload, null, 2);
    } catch (error) {
      this.showNotice(error instanceof ApiError ? error.problem.detail : String(error));
    }
    this.render();
  }

  async showReport(): Promise<void> {
    const report = await this.api.report();
    const view = this.require('report');
    view.replaceChildren();
    const heading = this.doc.createElement('h2');
    heading.textContent = `Recommendations for ${report.center}`;
    view.appendChild(heading);
    const table = this.doc.createElement('table');
    for (const entry of report.entries) {
      const row = this.doc.createElement('tr');
      row.className = 'report-row';
      for (const text of [
        entry.basis,
        entry.source,
        entry.id,
        entry.strength.toFixed(4),
        starIcons(entry.stars),
        entry.explanation,
      ]) {
        const cell = this.doc.createElement('td');
        cell.textContent = text;
        row.appendChild(cell);
      }
      table.appendChild(row);
    }
    view.appendChild(table);
  }

  showNotice(message: string): void {
    const notice = this.require('notice');
    notice.textContent = message;
  }

  // -- rendering ---------------------------------------------------------------

  private require(id: string): HTMLElement {
    const element = this.doc.getElementById(id);
    if (!element) {
      throw new Error(`missing #${id} container`);
    }
    return element;
  }

  /** Redraw the scene from the current view model; deterministic layout. */
  render(): void {
    const vm = this.viewModel();
    const scene = this.require('scene');
    scene.replaceChildren();

    const svg = this.doc.createElementNS(SVG_NS, 'svg');
    svg.setAttribute('viewBox', `0 0 ${this.geometry.width} ${this.geometry.height}`);
    svg.setAttribute('width', String(this.geometry.width));
    svg.setAttribute('height', String(this.geometry.height));

    for (const [radius, cls] of [
      [this.geometry.whiteRadius, 'ring-white'],
      [this.geometry.grayRadius, 'ring-gray'],
      [this.geometry.blueRadius, 'ring-blue'],
    ] as const) {
      const circle = this.doc.createElementNS(SVG_NS, 'circle');
      circle.setAttribute('cx', String(this.geometry.center.x));
      circle.setAttribute('cy', String(this.geometry.center.y));
      circle.setAttribute('r', String(radius));
      circle.setAttribute('class', `ring ${cls}`);
      svg.appendChild(circle);
    }

    const center = this.doc.createElementNS(SVG_NS, 'circle');
    center.setAttribute('cx', String(this.geometry.center.x));
    center.setAttribute('cy', String(this.geometry.center.y));
    center.setAttribute('r', String(this.geometry.centerRadius));
    center.setAttribute('class', 'center-avatar');
    center.setAttribute('data-id', vm.center);
    center.addEventListener('click', () => {
      void this.showDetail('user', vm.center);
    });
    svg.appendChild(center);

    const centerLabel = this.doc.createElementNS(SVG_NS, 'text');
    centerLabel.setAttribute('x', String(this.geometry.center.x));
    centerLabel.setAttribute('y', String(this.geometry.center.y));
    centerLabel.setAttribute('class', 'center-label');
    centerLabel.textContent = this.centerLabel;
    svg.appendChild(centerLabel);

    this.renderRing(svg, vm.blue, 'blue', this.geometry.blueRadius);
    this.renderRing(svg, vm.gray, 'gray', this.geometry.grayRadius);
    this.renderRing(svg, vm.white, 'white', this.geometry.whiteRadius);

    svg.addEventListener('dragover', (event) => event.preventDefault());
    svg.addEventListener('drop', (event) => this.onDrop(event as DragEvent));

    scene.appendChild(svg);
  }

  private renderRing(
    svg: SVGElement,
    nodes: SphereNode[],
    ring: 'blue' | 'gray' | 'white',
    radius: number,
  ): void {
    for (const placed of placeRing(nodes, radius, this.geometry)) {
      const group = this.doc.createElementNS(SVG_NS, 'g');
      group.setAttribute('class', `node node-${ring}${this.isSelected(placed.node) ? ' selected' : ''}`);
      group.setAttribute('data-ring', ring);
      group.setAttribute('data-id', placed.node.id);
      group.setAttribute('data-kind', placed.node.kind);
      group.setAttribute('tabindex', '0');

      const circle = this.doc.createElementNS(SVG_NS, 'circle');
      circle.setAttribute('cx', placed.x.toFixed(3));
      circle.setAttribute('cy', placed.y.toFixed(3));
      circle.setAttribute('r', placed.r.toFixed(3));
      group.appendChild(circle);

      const label = this.doc.createElementNS(SVG_NS, 'text');
      label.setAttribute('x', placed.x.toFixed(3));
      label.setAttribute('y', (placed.y + placed.r + 10).toFixed(3));
      label.textContent = placed.node.label;
      group.appendChild(label);

      if (placed.node.strength !== null && placed.node.stars !== null) {
        const title = this.doc.createElementNS(SVG_NS, 'title');
        title.textContent =
          `${placed.node.label} — ${placed.node.strength.toFixed(3)} ` +
          starIcons(placed.node.stars);
        group.appendChild(title);
      }

      group.addEventListener('click', () => {
        void this.showDetail(placed.node.kind, placed.node.id);
      });
      group.addEventListener('contextmenu', (event) => {
        event.preventDefault();
        if (ring === 'blue') {
          void this.removeItem(placed.node.id);
        }
      });
      group.addEventListener('keydown', (event) => {
        if ((event as KeyboardEvent).key === 'Delete' && ring === 'blue') {
          void this.removeItem(placed.node.id);
        }
      });

      svg.appendChild(group);
    }
  }

  private isSelected(node: SphereNode): boolean {
    return (
      this.selection !== null &&
      this.selection.id === node.id &&
      this.selection.kind === node.kind
    );
  }

  private onDrop(event: DragEvent): void {
    event.preventDefault();
    const raw = event.dataTransfer?.getData('application/json');
    if (!raw) {
      return;
    }
    let item: { kind: string; id: string };
    try {
      item = JSON.parse(raw);
    } catch {
      return;
    }
    if (item.kind === 'user' || item.kind === 'ro') {
      void this.dropItem(item.kind, item.id);
    }
  }

  // -- entity lists --------------------------------------------------------------

  private renderLists(): void {
    const container = this.require('lists');
    container.replaceChildren();
    if (!this.relations) {
      return;
    }
    for (const spec of LISTS) {
      const section = this.doc.createElement('section');
      section.className = 'entity-list';
      section.dataset.list = spec.key;
      const heading = this.doc.createElement('h3');
      heading.textContent = spec.title;
      section.appendChild(heading);
      const list = this.doc.createElement('ul');
      for (const entry of this.relations[spec.key].slice(0, LIST_PAGE_SIZE)) {
        list.appendChild(this.listItem(entry));
      }
      section.appendChild(list);
      container.appendChild(section);
    }
  }

  private listItem(entry: EntityRef): HTMLElement {
    const item = this.doc.createElement('li');
    item.textContent = entry.label || entry.id;
    item.draggable = true;
    item.dataset.kind = entry.kind;
    item.dataset.id = entry.id;
    item.addEventListener('dragstart', (event) => {
      (event as DragEvent).dataTransfer?.setData(
        'application/json',
        JSON.stringify({ kind: entry.kind, id: entry.id }),
      );
    });
    item.addEventListener('click', () => {
      void this.showDetail(entry.kind, entry.id);
    });
    return item;
  }
}

/**
 * Link-following client for the CollabSpheres service.
 *
 * The client walks relations served in response envelopes (open-session,
 * context, report, ...) instead of assembling URLs from templates, so it
 * only needs the entry-point user URL to operate.
 */

import {
  Envelope,
  Problem,
  RelationsPayload,
  ReportPayload,
  SessionPayload,
  SpheresPayload,
  UserPayload,
  findRel,
} from './types.js';

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Error carrying the service's problem document. */
export class ApiError extends Error {
  readonly problem: Problem;

  constructor(problem: Problem) {
    super(problem.detail);
    this.problem = problem;
  }
}

async function parseResponse<T>(response: Response): Promise<Envelope<T>> {
  const body = await response.json();
  if (!response.ok) {
    throw new ApiError(body as Problem);
  }
  return body as Envelope<T>;
}

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchFn: FetchLike;
  private sessionLinks: Map<string, string> = new Map();

  constructor(baseUrl: string, fetchFn?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/+$/, '');
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private resolve(href: string): string {
    return href.startsWith('http') ? href : this.baseUrl + href;
  }

  private async get<T>(href: string): Promise<Envelope<T>> {
    const response = await this.fetchFn(this.resolve(href), {
      headers: { accept: 'application/json' },
    });
    return parseResponse<T>(response);
  }

  private async send<T>(method: string, href: string, body: unknown): Promise<Envelope<T>> {
    const response = await this.fetchFn(this.resolve(href), {
      method,
      headers: { 'content-type': 'application/json', accept: 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    return parseResponse<T>(response);
  }

  async user(userId: string): Promise<Envelope<UserPayload>> {
    return this.get(`/users/${userId}`);
  }

  /** The four Fig-style lists around a user, via the user's relation links. */
  async relations(userId: string): Promise<RelationsPayload> {
    const userEnvelope = await this.user(userId);
    const href = findRel(userEnvelope.links, 'friends') ?? `/users/${userId}/relations`;
    const envelope = await this.get<RelationsPayload>(href);
    return envelope.payload;
  }

  async entity(kind: string, id: string): Promise<unknown> {
    const prefix = kind === 'user' ? '/users' : kind === 'ro' ? '/ros' : '/resources';
    const envelope = await this.get<unknown>(`${prefix}/${id}`);
    return envelope.payload;
  }

  /** Open a session for a center user and remember the session links. */
  async openSession(centerId: string): Promise<SessionPayload> {
    const userEnvelope = await this.user(centerId);
    const href = findRel(userEnvelope.links, 'open-session') ?? '/sessions';
    const envelope = await this.send<SessionPayload>('POST', href, { center: centerId });
    this.sessionLinks = new Map(envelope.links.map((link) => [link.rel, link.href]));
    return envelope.payload;
  }

  private sessionHref(rel: string): string {
    const href = this.sessionLinks.get(rel);
    if (!href) {
      throw new Error(`no session link for rel '${rel}' (session not open?)`);
    }
    return href;
  }

  async addContext(kind: 'user' | 'ro', id: string): Promise<SpheresPayload> {
    const envelope = await this.send<SpheresPayload>('POST', this.sessionHref('context'), {
      item: { kind, id },
    });
    return envelope.payload;
  }

  async removeContext(id: string): Promise<SpheresPayload> {
    const href = `${this.sessionHref('context')}/${id}`;
    const envelope = await this.send<SpheresPayload>('DELETE', href, undefined);
    return envelope.payload;
  }

  async spheres(): Promise<SpheresPayload> {
    const envelope = await this.get<SpheresPayload>(this.sessionHref('recommendations'));
    return envelope.payload;
  }

  async report(): Promise<ReportPayload> {
    const envelope = await this.get<ReportPayload>(this.sessionHref('report'));
    return envelope.payload;
  }
}

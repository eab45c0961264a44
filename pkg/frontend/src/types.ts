/**
 * Wire types for the CollabSpheres service API.
 *
 * Every 2xx response is an envelope {payload, links}; errors are problem
 * documents {status, code, detail}.
 */

export interface Link {
  rel: string;
  href: string;
  media_type: string;
}

export interface Envelope<T> {
  payload: T;
  links: Link[];
}

export interface Problem {
  status: number;
  code: string;
  detail: string;
}

export type NodeKind = 'user' | 'ro' | 'resource';

/** One ring entry; blue (context) nodes carry null strength/stars. */
export interface SphereNode {
  kind: NodeKind;
  id: string;
  label: string;
  strength: number | null;
  stars: number | null;
  source: string | null;
  explanation: string | null;
}

export interface SpheresPayload {
  white: SphereNode[];
  blue: SphereNode[];
  gray: SphereNode[];
}

export interface SessionPayload {
  session_id: string;
  center: string;
  spheres: SpheresPayload;
}

export interface EntityRef {
  kind: NodeKind;
  id: string;
  label: string;
}

export interface RelationsPayload {
  user: string;
  friends: EntityRef[];
  second_degree_friends: EntityRef[];
  own_ros: EntityRef[];
  friends_ros: EntityRef[];
}

export interface ReportEntry {
  basis: 'baseline' | 'context';
  kind: NodeKind;
  id: string;
  strength: number;
  stars: number;
  source: string;
  explanation: string;
}

export interface ReportPayload {
  center: string;
  entries: ReportEntry[];
}

export interface UserPayload {
  id: string;
  name: string;
  keywords: string[];
  created_at: string;
}

/** Resolve a link relation from an envelope; unknown rels are simply absent. */
export function findRel(links: Link[], rel: string): string | undefined {
  return links.find((link) => link.rel === rel)?.href;
}

// Payload shapes served by the scene service (all endpoints are GET + JSON).

export type GlyphKind = "platform" | "building" | "cylinder" | "method_cube";

export interface SceneNode {
  qname: string;
  kind: GlyphKind;
  position: [number, number, number];
  dims: [number, number, number];
  base_color: string;
  parent: string | null;
  detail_level: "always" | "on_demand";
}

export interface SceneDoc {
  schema_version: number;
  project: string;
  generated_at: string;
  bounds: { min: [number, number, number]; max: [number, number, number] };
  nodes: SceneNode[];
}

export interface RcEntry {
  completed_hours: number;
  remaining_hours: number;
  completed_fraction: number;
  band: number;
  color: string;
  untracked: boolean;
}

export interface Overlay {
  highlight: string[];
  transparent: string[];
  rc: Record<string, RcEntry>;
}

export interface PbiFeature {
  id: string;
  title: string;
  category: string;
}

export interface PbiSprint {
  id: string;
  name: string;
  number: number;
  start: string;
  end: string;
  features: PbiFeature[];
}

export interface PbiRelease {
  id: string;
  name: string;
  sprints: PbiSprint[];
}

export interface PbisDoc {
  project: string;
  releases: PbiRelease[];
}

export interface WorkEntryPayload {
  qname: string;
  date: string;
  hours: number;
  type: "remaining" | "completed";
}

export interface FeaturePayload {
  id: string;
  title: string;
  description: string;
  category: string;
  priority: number;
  estimate_hours: number;
  developer: string;
  class_refs: string[];
  method_refs: string[];
  tasks: string[];
  work_entries: WorkEntryPayload[];
}

export interface ArtifactDetail {
  qname: string;
  kind: string;
  metrics: Record<string, number>;
  features: FeaturePayload[];
  related: string[];
}

export interface SearchMatch {
  qname: string;
  position: [number, number, number] | null;
  dims: [number, number, number] | null;
}

export interface SearchResponse {
  mode: "exact" | "all";
  matches: SearchMatch[];
}

export type SelectionLevel = "feature" | "sprint" | "release";

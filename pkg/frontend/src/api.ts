// Thin typed client for the scene service. The base URL defaults to the
// hosting origin and can be overridden with ?api=http://host:port.

import type {
  ArtifactDetail,
  FeaturePayload,
  Overlay,
  PbisDoc,
  SceneDoc,
  SearchResponse,
  SelectionLevel,
} from "./types";

export class ApiError extends Error {
  constructor(public status: number, public detail: string) {
    super(`${status}: ${detail}`);
  }
}

export class ApiClient {
  constructor(private base: string = "") {}

  private async get<T>(path: string, params?: URLSearchParams): Promise<T> {
    const query = params && params.size > 0 ? `?${params.toString()}` : "";
    const response = await fetch(`${this.base}${path}${query}`);
    const body = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, body?.detail ?? response.statusText);
    }
    return body as T;
  }

  scene(): Promise<SceneDoc> {
    return this.get("/api/scene");
  }

  pbis(): Promise<PbisDoc> {
    return this.get("/api/pbis");
  }

  select(level: SelectionLevel, ids: string[]): Promise<Overlay> {
    const params = new URLSearchParams();
    params.set("level", level);
    for (const id of ids) params.append("id", id);
    return this.get("/api/select", params);
  }

  artifact(qname: string): Promise<ArtifactDetail> {
    return this.get(`/api/artifact/${encodeURIComponent(qname)}`);
  }

  feature(id: string): Promise<FeaturePayload> {
    return this.get(`/api/feature/${encodeURIComponent(id)}`);
  }

  rcConcept(level: SelectionLevel, ids: string[]): Promise<Overlay> {
    const params = new URLSearchParams();
    params.set("mode", "concept");
    params.set("level", level);
    for (const id of ids) params.append("id", id);
    params.set("scale", "city");
    return this.get("/api/rc", params);
  }

  rcBuildings(targets: string[]): Promise<Overlay> {
    const params = new URLSearchParams();
    params.set("mode", "artefact");
    params.set("scale", "building");
    for (const target of targets) params.append("target", target);
    return this.get("/api/rc", params);
  }

  search(q: string, mode: "exact" | "all"): Promise<SearchResponse> {
    const params = new URLSearchParams();
    params.set("q", q);
    params.set("mode", mode);
    return this.get("/api/search", params);
  }
}

export function apiBaseFromLocation(search: string): string {
  return new URLSearchParams(search).get("api") ?? "";
}

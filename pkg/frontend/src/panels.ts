// On-demand GUI controls: PBI explorer tree, search panel, detail pane,
// multipurpose tooltip and the top/bottom info bars. DOM only.

import type { ArtifactDetail, FeaturePayload, PbisDoc, SearchMatch, SelectionLevel } from "./types";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export type ExplorerSelect = (level: SelectionLevel, id: string) => void;

export class PbiExplorer {
  readonly element: HTMLElement;
  private featureRows = new Map<string, HTMLElement>();

  constructor(doc: PbisDoc, onSelect: ExplorerSelect) {
    this.element = el("div", "panel pbi-explorer");
    this.element.appendChild(el("h2", "panel-title", "Scrum features"));
    for (const release of doc.releases) {
      const releaseRow = el("div", "row release", `${release.name} (${release.id})`);
      releaseRow.dataset.level = "release";
      releaseRow.dataset.id = release.id;
      releaseRow.addEventListener("click", () => onSelect("release", release.id));
      this.element.appendChild(releaseRow);
      for (const sprint of release.sprints) {
        const sprintRow = el("div", "row sprint", `${sprint.name} #${sprint.number}`);
        sprintRow.dataset.level = "sprint";
        sprintRow.dataset.id = sprint.id;
        sprintRow.addEventListener("click", () => onSelect("sprint", sprint.id));
        this.element.appendChild(sprintRow);
        for (const feature of sprint.features) {
          const row = el("div", "row feature", `${feature.id} ${feature.title}`);
          row.dataset.level = "feature";
          row.dataset.id = feature.id;
          row.dataset.category = feature.category;
          row.addEventListener("click", () => onSelect("feature", feature.id));
          this.element.appendChild(row);
          this.featureRows.set(feature.id, row);
        }
      }
    }
  }

  /** Reverse mapping: light up the explorer rows for these features. */
  highlightFeatures(ids: string[]): void {
    for (const row of this.featureRows.values()) row.classList.remove("hit");
    for (const id of ids) this.featureRows.get(id)?.classList.add("hit");
  }

  highlightedFeatureIds(): string[] {
    return [...this.featureRows.entries()].filter(([, row]) => row.classList.contains("hit")).map(([id]) => id);
  }
}

export type SearchSubmit = (query: string, mode: "exact" | "all") => void;
export type ResultPick = (qname: string) => void;

export class SearchPanel {
  readonly element: HTMLElement;
  private input: HTMLInputElement;
  private mode: HTMLSelectElement;
  private results: HTMLElement;

  constructor(onSubmit: SearchSubmit) {
    this.element = el("div", "panel search-panel");
    this.element.appendChild(el("h2", "panel-title", "Find artefact"));
    this.input = el("input");
    this.input.type = "text";
    this.input.placeholder = "qualified name or fragment";
    this.mode = el("select");
    for (const value of ["exact", "all"]) {
      const option = el("option", undefined, value);
      option.value = value;
      this.mode.appendChild(option);
    }
    const go = el("button", undefined, "search");
    go.addEventListener("click", () => onSubmit(this.input.value, this.mode.value as "exact" | "all"));
    this.input.addEventListener("keydown", (event) => {
      if (event.key === "Enter") onSubmit(this.input.value, this.mode.value as "exact" | "all");
    });
    this.results = el("div", "results");
    this.element.append(this.input, this.mode, go, this.results);
  }

  showResults(matches: SearchMatch[], onPick: ResultPick): void {
    this.results.replaceChildren();
    if (matches.length === 0) {
      this.results.appendChild(el("div", "result empty", "no matches"));
      return;
    }
    for (const match of matches) {
      const row = el("div", "result", match.qname);
      row.addEventListener("click", () => onPick(match.qname));
      this.results.appendChild(row);
    }
  }
}

function workEntriesTable(feature: FeaturePayload): HTMLElement {
  const table = el("table", "entries");
  const head = el("tr");
  for (const title of ["date", "qname", "hours", "type"]) head.appendChild(el("th", undefined, title));
  table.appendChild(head);
  for (const entry of feature.work_entries) {
    const row = el("tr");
    row.appendChild(el("td", undefined, entry.date));
    row.appendChild(el("td", undefined, entry.qname));
    row.appendChild(el("td", undefined, entry.hours.toFixed(2)));
    row.appendChild(el("td", undefined, entry.type));
    table.appendChild(row);
  }
  return table;
}

export class DetailPane {
  readonly element: HTMLElement;

  constructor() {
    this.element = el("div", "panel detail-pane");
  }

  showArtifact(detail: ArtifactDetail): void {
    this.element.replaceChildren();
    this.element.appendChild(el("h2", "panel-title", detail.qname));
    const metrics = Object.entries(detail.metrics)
      .map(([key, value]) => `${key.toUpperCase()} ${value}`)
      .join("  ");
    this.element.appendChild(el("div", "metrics", `${detail.kind}  ${metrics}`));
    if (detail.features.length === 0) {
      this.element.appendChild(el("div", "empty", "no linked features"));
    }
    for (const feature of detail.features) {
      const block = el("div", "feature-block");
      block.appendChild(el("h3", undefined, `${feature.id} ${feature.title} [${feature.category}]`));
      block.appendChild(el("div", "meta", `priority ${feature.priority} · ${feature.developer} · est ${feature.estimate_hours}h`));
      block.appendChild(el("p", "description", feature.description));
      if (feature.tasks.length > 0) {
        const tasks = el("ul", "tasks");
        for (const task of feature.tasks) tasks.appendChild(el("li", undefined, task));
        block.appendChild(tasks);
      }
      if (feature.work_entries.length > 0) block.appendChild(workEntriesTable(feature));
      this.element.appendChild(block);
    }
    if (detail.related.length > 0) {
      this.element.appendChild(el("h3", undefined, "related artefacts"));
      const list = el("ul", "related");
      for (const qname of detail.related) list.appendChild(el("li", undefined, qname));
      this.element.appendChild(list);
    }
  }

  showFeature(feature: FeaturePayload): void {
    this.showArtifact({
      qname: feature.id,
      kind: "feature",
      metrics: {},
      features: [feature],
      related: [],
    });
  }
}

export class Tooltip {
  readonly element: HTMLElement;

  constructor() {
    this.element = el("div", "tooltip");
    this.element.style.display = "none";
  }

  show(text: string, x: number, y: number): void {
    this.element.textContent = text;
    this.element.style.display = "block";
    this.element.style.left = `${x + 12}px`;
    this.element.style.top = `${y + 12}px`;
  }

  hide(): void {
    this.element.style.display = "none";
  }
}

export class InfoBars {
  readonly top: HTMLElement;
  readonly bottom: HTMLElement;

  constructor() {
    this.top = el("div", "infobar top");
    this.bottom = el("div", "infobar bottom");
  }

  setArtefact(qname: string | null, metrics?: Record<string, number>): void {
    this.top.textContent = qname ?? "";
    this.bottom.textContent =
      qname && metrics
        ? Object.entries(metrics)
            .map(([key, value]) => `${key.toUpperCase()} ${value}`)
            .join("   ")
        : "";
  }
}

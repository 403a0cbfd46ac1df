// View state: the active selection (one origin at a time) and panel
// visibility. Panels toggle freely without touching the selection.

import type { SelectionLevel } from "./types";

export type SelectionOrigin =
  | { side: "concept"; level: SelectionLevel; ids: string[] }
  | { side: "artefact"; qname: string }
  | null;

export type PanelName = "pbi_explorer" | "search" | "detail" | "tooltip";

export class ViewState {
  private selection: SelectionOrigin = null;
  private panels: Record<PanelName, boolean> = {
    pbi_explorer: true,
    search: false,
    detail: false,
    tooltip: true,
  };
  rcActive = false;

  get current(): SelectionOrigin {
    return this.selection;
  }

  selectConcept(level: SelectionLevel, ids: string[]): void {
    this.selection = { side: "concept", level, ids: [...ids] };
  }

  selectArtefact(qname: string): void {
    this.selection = { side: "artefact", qname };
  }

  clearSelection(): void {
    this.selection = null;
    this.rcActive = false;
  }

  isVisible(panel: PanelName): boolean {
    return this.panels[panel];
  }

  toggle(panel: PanelName): boolean {
    this.panels[panel] = !this.panels[panel];
    return this.panels[panel];
  }
}

import type { Overlay, PbisDoc, SceneDoc } from "../src/types";

// Small two-class city: pkg.A plain, pkg.B with two method cubes.
export const sceneDoc: SceneDoc = {
  schema_version: 1,
  project: "demo",
  generated_at: "1970-01-01T00:00:00Z",
  bounds: { min: [0, 0, 0], max: [12, 4.5, 8] },
  nodes: [
    {
      qname: "pkg",
      kind: "platform",
      position: [0, 0, 0],
      dims: [12, 0.5, 8],
      base_color: "#7D878D",
      parent: null,
      detail_level: "always",
    },
    {
      qname: "pkg.A",
      kind: "building",
      position: [1, 0.5, 1],
      dims: [2, 3, 2],
      base_color: "#CFD8DC",
      parent: "pkg",
      detail_level: "always",
    },
    {
      qname: "pkg.B",
      kind: "building",
      position: [5, 0.5, 1],
      dims: [2, 4, 2],
      base_color: "#90A4AE",
      parent: "pkg",
      detail_level: "always",
    },
    {
      qname: "pkg.B#m/0",
      kind: "method_cube",
      position: [5, 0.5, 1],
      dims: [1, 1, 1],
      base_color: "#2962FF",
      parent: "pkg.B",
      detail_level: "on_demand",
    },
    {
      qname: "pkg.B#n/1",
      kind: "method_cube",
      position: [6, 0.5, 1],
      dims: [1, 1, 1],
      base_color: "#2962FF",
      parent: "pkg.B",
      detail_level: "on_demand",
    },
    {
      qname: "pkg.I",
      kind: "cylinder",
      position: [9, 0.5, 1],
      dims: [2, 2, 2],
      base_color: "#CFD8DC",
      parent: "pkg",
      detail_level: "always",
    },
  ],
};

export const selectOverlay: Overlay = {
  highlight: ["pkg.A", "pkg.B#m/0"],
  transparent: ["pkg.B"],
  rc: {},
};

export const rcOverlay: Overlay = {
  highlight: [],
  transparent: [],
  rc: {
    "pkg.B": {
      completed_hours: 6,
      remaining_hours: 2,
      completed_fraction: 0.75,
      band: 4,
      color: "#388E3C",
      untracked: false,
    },
  },
};

export const pbisDoc: PbisDoc = {
  project: "demo",
  releases: [
    {
      id: "R1",
      name: "MVP",
      sprints: [
        {
          id: "S1",
          name: "Sprint 1",
          number: 1,
          start: "2024-01-01",
          end: "2024-01-14",
          features: [
            { id: "F1", title: "Window chrome", category: "new" },
            { id: "F2", title: "Engine boot", category: "bug" },
          ],
        },
      ],
    },
  ],
};

// Scene-graph construction and overlay / RC / LOD state for the 3D city.
// Everything here is renderer-free so it can be exercised headless; main.ts
// owns the WebGL loop.

import * as THREE from "three";
import type { Overlay, RcEntry, SceneDoc, SceneNode } from "./types";

const HIGHLIGHT_EMISSIVE = new THREE.Color("#ff3224");
const GHOST_OPACITY = 0.25;

// on-demand method distances, relative to the class glyph's largest dimension
export const LOD_GHOST_FACTOR = 4.0;
export const LOD_DETACH_FACTOR = 1.5;

type LodState = "far" | "near" | "inside";

interface ClassState {
  highlighted: boolean;
  ghosted: boolean;
  revealed: boolean;
  lod: LodState;
  rc: RcEntry | null;
}

const sharedBox = new THREE.BoxGeometry(1, 1, 1);
const sharedCylinder = new THREE.CylinderGeometry(0.5, 0.5, 1, 24);

function makeMesh(node: SceneNode): THREE.Mesh {
  const geometry = node.kind === "cylinder" ? sharedCylinder : sharedBox;
  const material = new THREE.MeshLambertMaterial({ color: node.base_color });
  const mesh = new THREE.Mesh(geometry, material);
  const [x, y, z] = node.position;
  const [sx, sy, sz] = node.dims;
  mesh.scale.set(sx, sy, sz);
  mesh.position.set(x + sx / 2, y + sy / 2, z + sz / 2); // doc positions are min-corner
  mesh.userData.qname = node.qname;
  mesh.userData.kind = node.kind;
  return mesh;
}

function setEmissive(mesh: THREE.Mesh, on: boolean): void {
  const material = mesh.material as THREE.MeshLambertMaterial;
  material.emissive.set(on ? HIGHLIGHT_EMISSIVE : 0x000000);
}

function setGhost(mesh: THREE.Mesh, on: boolean): void {
  const material = mesh.material as THREE.MeshLambertMaterial;
  material.transparent = on;
  material.opacity = on ? GHOST_OPACITY : 1.0;
  material.needsUpdate = true;
}

export class CityScene {
  readonly root = new THREE.Group();
  private nodes = new Map<string, SceneNode>();
  private meshes = new Map<string, THREE.Mesh>();
  private methodsByClass = new Map<string, string[]>();
  private classStates = new Map<string, ClassState>();
  private highlightedMethods = new Set<string>();
  private rcGroups = new Map<string, THREE.Group>();

  constructor(doc: SceneDoc) {
    for (const node of doc.nodes) {
      this.nodes.set(node.qname, node);
      const mesh = makeMesh(node);
      if (node.detail_level === "on_demand") {
        mesh.visible = false;
      }
      this.meshes.set(node.qname, mesh);
      this.root.add(mesh);
      if (node.kind === "building" || node.kind === "cylinder") {
        this.classStates.set(node.qname, {
          highlighted: false,
          ghosted: false,
          revealed: false,
          lod: "far",
          rc: null,
        });
      }
      if (node.kind === "method_cube" && node.parent) {
        const list = this.methodsByClass.get(node.parent) ?? [];
        list.push(node.qname);
        this.methodsByClass.set(node.parent, list);
      }
    }
  }

  nodeFor(qname: string): SceneNode | undefined {
    return this.nodes.get(qname);
  }

  meshFor(qname: string): THREE.Mesh | undefined {
    return this.meshes.get(qname);
  }

  classQnames(): string[] {
    return [...this.classStates.keys()];
  }

  /** Overlay from /api/select or /api/rc replaces the previous one. */
  applyOverlay(overlay: Overlay): void {
    this.clearOverlay();
    for (const qname of overlay.highlight) {
      if (qname.includes("#")) {
        this.highlightedMethods.add(qname);
        const mesh = this.meshes.get(qname);
        if (mesh) setEmissive(mesh, true);
      } else {
        const state = this.classStates.get(qname);
        if (state) state.highlighted = true;
        else {
          const mesh = this.meshes.get(qname); // platforms can glow too
          if (mesh) setEmissive(mesh, true);
        }
      }
    }
    for (const qname of overlay.transparent) {
      const state = this.classStates.get(qname);
      if (state) state.ghosted = true;
    }
    for (const [qname, entry] of Object.entries(overlay.rc)) {
      const state = this.classStates.get(qname);
      if (state) state.rc = entry;
    }
    this.refreshAll();
  }

  clearOverlay(): void {
    for (const qname of this.highlightedMethods) {
      const mesh = this.meshes.get(qname);
      if (mesh) setEmissive(mesh, false);
    }
    this.highlightedMethods.clear();
    for (const [qname, state] of this.classStates) {
      state.highlighted = false;
      state.ghosted = false;
      state.rc = null;
      const mesh = this.meshes.get(qname);
      if (mesh) setEmissive(mesh, false);
    }
    for (const mesh of this.meshes.values()) {
      if (mesh.userData.kind === "platform") setEmissive(mesh, false);
    }
    this.refreshAll();
  }

  /** Manual "reveal methods" for any selected set, independent of distance. */
  revealMethods(classQnames: string[]): void {
    for (const qname of classQnames) {
      const state = this.classStates.get(qname);
      if (state) {
        state.revealed = true;
        this.refreshClass(qname);
      }
    }
  }

  clearReveals(): void {
    for (const [qname, state] of this.classStates) {
      if (state.revealed) {
        state.revealed = false;
        this.refreshClass(qname);
      }
    }
  }

  /** Distance-based on-demand detail: ghost the shell when the camera is
   * close, remove it entirely when very close; restore on retreat. */
  updateLod(cameraPosition: THREE.Vector3): void {
    for (const [qname, state] of this.classStates) {
      const mesh = this.meshes.get(qname);
      if (!mesh) continue;
      const size = Math.max(mesh.scale.x, mesh.scale.y, mesh.scale.z);
      const distance = cameraPosition.distanceTo(mesh.position);
      let lod: LodState = "far";
      if (distance < LOD_DETACH_FACTOR * size) lod = "inside";
      else if (distance < LOD_GHOST_FACTOR * size) lod = "near";
      if (lod !== state.lod) {
        state.lod = lod;
        this.refreshClass(qname);
      }
    }
  }

  private refreshAll(): void {
    for (const qname of this.classStates.keys()) this.refreshClass(qname);
  }

  private refreshClass(qname: string): void {
    const state = this.classStates.get(qname);
    const mesh = this.meshes.get(qname);
    if (!state || !mesh) return;

    const prevGroup = this.rcGroups.get(qname);
    if (prevGroup) {
      this.root.remove(prevGroup);
      this.rcGroups.delete(qname);
    }

    if (state.rc) {
      mesh.visible = false;
      const group = this.buildRcGroup(qname, state.rc, state.highlighted);
      this.rcGroups.set(qname, group);
      this.root.add(group);
      this.setMethodsVisible(qname, false);
      return;
    }

    const showMethods = state.ghosted || state.revealed || state.lod !== "far";
    mesh.visible = state.lod !== "inside";
    setGhost(mesh, state.ghosted || state.lod === "near");
    setEmissive(mesh, state.highlighted);
    this.setMethodsVisible(qname, showMethods);
  }

  private setMethodsVisible(classQname: string, visible: boolean): void {
    for (const methodQname of this.methodsByClass.get(classQname) ?? []) {
      const cube = this.meshes.get(methodQname);
      if (cube) {
        cube.visible = visible;
        setEmissive(cube, visible && this.highlightedMethods.has(methodQname));
      }
    }
  }

  /** Split glyph: opaque lower portion sized by the completed fraction in
   * the band color, ghosted upper portion for the remaining work. */
  private buildRcGroup(qname: string, entry: RcEntry, highlighted: boolean): THREE.Group {
    const node = this.nodes.get(qname)!;
    const [x, y, z] = node.position;
    const [sx, sy, sz] = node.dims;
    const geometry = node.kind === "cylinder" ? sharedCylinder : sharedBox;
    const group = new THREE.Group();
    group.userData.qname = qname;
    const lowerHeight = entry.completed_fraction * sy;
    if (lowerHeight > 0) {
      const lower = new THREE.Mesh(
        geometry,
        new THREE.MeshLambertMaterial({ color: entry.color }),
      );
      lower.scale.set(sx, lowerHeight, sz);
      lower.position.set(x + sx / 2, y + lowerHeight / 2, z + sz / 2);
      lower.userData.qname = qname;
      lower.userData.rcSegment = "completed";
      if (highlighted) setEmissive(lower, true);
      group.add(lower);
    }
    const upperHeight = sy - lowerHeight;
    if (upperHeight > 0) {
      const upper = new THREE.Mesh(
        geometry,
        new THREE.MeshLambertMaterial({
          color: node.base_color,
          transparent: true,
          opacity: GHOST_OPACITY,
        }),
      );
      upper.scale.set(sx, upperHeight, sz);
      upper.position.set(x + sx / 2, y + lowerHeight + upperHeight / 2, z + sz / 2);
      upper.userData.qname = qname;
      upper.userData.rcSegment = "remaining";
      group.add(upper);
    }
    return group;
  }

  rcGroupFor(qname: string): THREE.Group | undefined {
    return this.rcGroups.get(qname);
  }

  /** Center and radius used by search fly-to framing. */
  boundsOf(qname: string): { center: THREE.Vector3; radius: number } | null {
    const node = this.nodes.get(qname);
    if (!node) return null;
    const [x, y, z] = node.position;
    const [sx, sy, sz] = node.dims;
    const center = new THREE.Vector3(x + sx / 2, y + sy / 2, z + sz / 2);
    return { center, radius: Math.max(sx, sy, sz) };
  }

  pickables(): THREE.Object3D[] {
    const out: THREE.Object3D[] = [];
    for (const mesh of this.meshes.values()) {
      if (mesh.visible) out.push(mesh);
    }
    for (const group of this.rcGroups.values()) {
      out.push(...group.children);
    }
    return out;
  }

  qnameOf(object: THREE.Object3D | null): string | null {
    let current: THREE.Object3D | null = object;
    while (current) {
      if (typeof current.userData.qname === "string") return current.userData.qname;
      current = current.parent;
    }
    return null;
  }

  /** Screen-facing inventory used by the overlay fidelity checks. */
  emissiveGlyphs(): string[] {
    const out: string[] = [];
    for (const [qname, mesh] of this.meshes) {
      const material = mesh.material as THREE.MeshLambertMaterial;
      if (mesh.visible && material.emissive.getHex() !== 0) out.push(qname);
    }
    for (const group of this.rcGroups.values()) {
      for (const child of group.children) {
        const material = (child as THREE.Mesh).material as THREE.MeshLambertMaterial;
        if (material.emissive && material.emissive.getHex() !== 0) {
          out.push(child.userData.qname as string);
        }
      }
    }
    return out.sort();
  }
}

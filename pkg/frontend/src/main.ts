// Browser bootstrap: renderer, camera controls, picking and panel wiring.

import * as THREE from "three";
import { OrbitControls } from "three/examples/jsm/controls/OrbitControls.js";
import { ApiClient, ApiError, apiBaseFromLocation } from "./api";
import { CameraFlight, framingPosition } from "./camera";
import { CityScene } from "./city";
import { DetailPane, InfoBars, PbiExplorer, SearchPanel, Tooltip } from "./panels";
import { ViewState } from "./state";
import type { SelectionLevel } from "./types";

async function bootstrap(): Promise<void> {
  const api = new ApiClient(apiBaseFromLocation(window.location.search));
  const state = new ViewState();

  const sceneDoc = await api.scene();
  const pbis = await api.pbis();
  const city = new CityScene(sceneDoc);

  const scene = new THREE.Scene();
  scene.background = new THREE.Color("#10151b");
  scene.add(city.root);
  scene.add(new THREE.AmbientLight(0xffffff, 0.7));
  const sun = new THREE.DirectionalLight(0xffffff, 1.4);
  sun.position.set(1, 2, 1.2);
  scene.add(sun);

  const [maxX, maxY, maxZ] = sceneDoc.bounds.max;
  const camera = new THREE.PerspectiveCamera(50, window.innerWidth / window.innerHeight, 0.1, 5000);
  camera.position.set(maxX * 1.2 + 10, Math.max(maxY * 3, 30), maxZ * 1.2 + 10);

  const renderer = new THREE.WebGLRenderer({ antialias: true });
  renderer.setSize(window.innerWidth, window.innerHeight);
  document.body.appendChild(renderer.domElement);

  const controls = new OrbitControls(camera, renderer.domElement);
  controls.target.set(maxX / 2, 0, maxZ / 2);

  // ---- panels -------------------------------------------------------
  const infoBars = new InfoBars();
  const tooltip = new Tooltip();
  const detail = new DetailPane();
  const search = new SearchPanel(async (query, mode) => {
    if (!query.trim()) return;
    try {
      const result = await api.search(query, mode);
      search.showResults(result.matches, (qname) => void flyToArtefact(qname));
      if (result.matches.length === 1) void flyToArtefact(result.matches[0].qname);
    } catch (error) {
      if (error instanceof ApiError) search.showResults([], () => undefined);
    }
  });
  const explorer = new PbiExplorer(pbis, (level, id) => void selectConcept(level, id));
  document.body.append(explorer.element, search.element, detail.element, tooltip.element, infoBars.top, infoBars.bottom);
  search.element.style.display = "none";
  detail.element.style.display = "none";

  function syncPanels(): void {
    explorer.element.style.display = state.isVisible("pbi_explorer") ? "" : "none";
    search.element.style.display = state.isVisible("search") ? "" : "none";
    detail.element.style.display = state.isVisible("detail") ? "" : "none";
    if (!state.isVisible("tooltip")) tooltip.hide();
  }

  // ---- selection ----------------------------------------------------
  let flight: CameraFlight | null = null;
  let requestCounter = 0; // stale async responses are discarded

  async function selectConcept(level: SelectionLevel, id: string): Promise<void> {
    const ticket = ++requestCounter;
    state.selectConcept(level, [id]);
    const overlay = state.rcActive ? await api.rcConcept(level, [id]) : await api.select(level, [id]);
    if (ticket !== requestCounter) return;
    city.applyOverlay(overlay);
    explorer.highlightFeatures([]);
    if (level === "feature" && state.isVisible("detail")) {
      const payload = await api.feature(id);
      if (ticket === requestCounter) detail.showFeature(payload);
    }
  }

  async function selectArtefact(qname: string): Promise<void> {
    const ticket = ++requestCounter;
    state.selectArtefact(qname);
    const record = await api.artifact(qname);
    if (ticket !== requestCounter) return;
    const featureIds = record.features.map((feature) => feature.id);
    explorer.highlightFeatures(featureIds);
    city.applyOverlay({
      highlight: [qname, ...record.related],
      transparent: [],
      rc: {},
    });
    detail.showArtifact(record);
  }

  async function flyToArtefact(qname: string): Promise<void> {
    const bounds = city.boundsOf(qname);
    if (!bounds) return;
    city.applyOverlay({ highlight: [qname], transparent: [], rc: {} });
    flight = new CameraFlight(camera, controls.target.clone(), framingPosition(camera, bounds), bounds.center);
  }

  function clearSelection(): void {
    state.clearSelection();
    city.clearOverlay();
    explorer.highlightFeatures([]);
    infoBars.setArtefact(null);
  }

  // ---- picking ------------------------------------------------------
  const raycaster = new THREE.Raycaster();
  const pointer = new THREE.Vector2();

  function pick(event: MouseEvent): string | null {
    pointer.x = (event.clientX / window.innerWidth) * 2 - 1;
    pointer.y = -(event.clientY / window.innerHeight) * 2 + 1;
    raycaster.setFromCamera(pointer, camera);
    const hits = raycaster.intersectObjects(city.pickables(), false);
    return hits.length > 0 ? city.qnameOf(hits[0].object) : null;
  }

  renderer.domElement.addEventListener("click", (event) => {
    const qname = pick(event);
    if (qname) void selectArtefact(qname);
    else clearSelection();
  });

  renderer.domElement.addEventListener("contextmenu", (event) => {
    event.preventDefault();
    const qname = pick(event);
    if (!qname) return;
    const choice = window.prompt(
      `${qname}\n1 = details, 2 = reveal methods, 3 = rc view`,
      "1",
    );
    if (choice === "1") void selectArtefact(qname);
    if (choice === "2") city.revealMethods([qname.split("#", 1)[0]]);
    if (choice === "3") {
      void api.rcBuildings([qname.split("#", 1)[0]]).then((overlay) => city.applyOverlay(overlay));
    }
  });

  renderer.domElement.addEventListener("mousemove", (event) => {
    if (!state.isVisible("tooltip")) return;
    const qname = pick(event);
    if (qname) {
      const node = city.nodeFor(qname);
      tooltip.show(`${qname} (${node?.kind ?? ""})`, event.clientX, event.clientY);
      infoBars.setArtefact(qname);
    } else {
      tooltip.hide();
    }
  });

  // ---- keyboard toggles --------------------------------------------
  window.addEventListener("keydown", (event) => {
    if (event.target instanceof HTMLInputElement) return;
    if (event.key === "p") state.toggle("pbi_explorer");
    if (event.key === "/") {
      state.toggle("search");
      event.preventDefault();
    }
    if (event.key === "t") state.toggle("tooltip");
    if (event.key === "d") state.toggle("detail");
    if (event.key === "r") {
      state.rcActive = !state.rcActive;
      const current = state.current;
      if (current && current.side === "concept") void selectConcept(current.level, current.ids[0]);
    }
    if (event.key === "Escape") clearSelection();
    syncPanels();
  });

  window.addEventListener("resize", () => {
    camera.aspect = window.innerWidth / window.innerHeight;
    camera.updateProjectionMatrix();
    renderer.setSize(window.innerWidth, window.innerHeight);
  });

  // ---- render loop --------------------------------------------------
  const clock = new THREE.Clock();
  function frame(): void {
    requestAnimationFrame(frame);
    const dt = clock.getDelta();
    if (flight) {
      controls.target.copy(flight.tick(dt));
      if (flight.done) flight = null;
    } else {
      controls.update();
    }
    city.updateLod(camera.position);
    renderer.render(scene, camera);
  }
  syncPanels();
  frame();
}

bootstrap().catch((error) => {
  const banner = document.createElement("div");
  banner.className = "error-banner";
  banner.textContent = `failed to load scene: ${error}`;
  document.body.appendChild(banner);
});

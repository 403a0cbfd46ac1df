import * as THREE from "three";
import { describe, expect, it } from "vitest";

import { CameraFlight, MIN_FLY_SECONDS, easeInOutCubic, framingPosition } from "../src/camera";

describe("camera flight", () => {
  it("lasts at least the minimum duration", () => {
    const camera = new THREE.PerspectiveCamera();
    const flight = new CameraFlight(
      camera,
      new THREE.Vector3(),
      new THREE.Vector3(10, 10, 10),
      new THREE.Vector3(5, 0, 5),
      0.1, // caller asks for too little
    );
    expect(flight.duration).toBeGreaterThanOrEqual(MIN_FLY_SECONDS);
  });

  it("eases from start to destination", () => {
    const camera = new THREE.PerspectiveCamera();
    camera.position.set(0, 0, 0);
    const destination = new THREE.Vector3(8, 4, 8);
    const lookAt = new THREE.Vector3(4, 0, 4);
    const flight = new CameraFlight(camera, new THREE.Vector3(0, 0, -1), destination, lookAt);

    flight.tick(0.4); // halfway
    expect(flight.done).toBe(false);
    expect(camera.position.length()).toBeGreaterThan(0);
    expect(camera.position.distanceTo(destination)).toBeGreaterThan(1e-6);

    flight.tick(0.4); // completes the 0.8s default
    expect(flight.done).toBe(true);
    expect(camera.position.distanceTo(destination)).toBeLessThan(1e-9);
  });

  it("easing is monotone and hits the endpoints", () => {
    expect(easeInOutCubic(0)).toBe(0);
    expect(easeInOutCubic(1)).toBe(1);
    let previous = -1;
    for (let i = 0; i <= 100; i++) {
      const value = easeInOutCubic(i / 100);
      expect(value).toBeGreaterThanOrEqual(previous);
      previous = value;
    }
  });

  it("framing position backs away far enough for the glyph size", () => {
    const camera = new THREE.PerspectiveCamera();
    camera.position.set(0, 0, 10);
    camera.lookAt(0, 0, 0);
    const target = { center: new THREE.Vector3(0, 0, 0), radius: 5 };
    const pose = framingPosition(camera, target);
    expect(pose.distanceTo(target.center)).toBeGreaterThanOrEqual(target.radius * 3);
  });
});

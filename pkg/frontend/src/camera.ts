// Animated camera transitions for search fly-to. Pure math here; the
// render loop drives tick().

import * as THREE from "three";

export const MIN_FLY_SECONDS = 0.8;

export function easeInOutCubic(t: number): number {
  return t < 0.5 ? 4 * t * t * t : 1 - Math.pow(-2 * t + 2, 3) / 2;
}

export interface FlightTarget {
  center: THREE.Vector3;
  radius: number;
}

/** Camera end pose that frames the glyph: back off along the current view
 * direction far enough for the glyph radius to fit a ~45° frustum. */
export function framingPosition(camera: THREE.PerspectiveCamera, target: FlightTarget): THREE.Vector3 {
  const distance = Math.max(target.radius * 3, 6);
  const direction = new THREE.Vector3();
  camera.getWorldDirection(direction);
  return target.center.clone().addScaledVector(direction, -distance).add(new THREE.Vector3(0, target.radius, 0));
}

export class CameraFlight {
  private elapsed = 0;
  readonly duration: number;
  private fromPosition: THREE.Vector3;
  private fromTarget: THREE.Vector3;
  done = false;

  constructor(
    private camera: THREE.PerspectiveCamera,
    currentTarget: THREE.Vector3,
    private toPosition: THREE.Vector3,
    private toTarget: THREE.Vector3,
    duration: number = MIN_FLY_SECONDS,
  ) {
    this.duration = Math.max(duration, MIN_FLY_SECONDS);
    this.fromPosition = camera.position.clone();
    this.fromTarget = currentTarget.clone();
  }

  /** Advance by dt seconds; returns the interpolated look-at target. */
  tick(dt: number): THREE.Vector3 {
    this.elapsed = Math.min(this.elapsed + dt, this.duration);
    const t = easeInOutCubic(this.elapsed / this.duration);
    this.camera.position.lerpVectors(this.fromPosition, this.toPosition, t);
    const lookAt = new THREE.Vector3().lerpVectors(this.fromTarget, this.toTarget, t);
    this.camera.lookAt(lookAt);
    if (this.elapsed >= this.duration) this.done = true;
    return lookAt;
  }
}

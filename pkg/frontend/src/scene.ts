/**
 * three.js scene: plates, arms, ball joints, pointing arrow, and the
 * broken-arm workspace overlay on a sphere around the joint. All geometry
 * arrives from the service in the base frame; nothing is computed here
 * beyond drawing.
 */

import * as THREE from "three";

import type { ConfigurationEntry, SweepSample, Vec3 } from "./types.js";

const COLORS = {
  basePlate: 0x4a6fa5,
  distalPlate: 0xd97706,
  arm: 0xe5e7eb,
  ball: 0xef4444,
  hinge: 0x111827,
  pointing: 0x10b981,
  overlay: 0x38bdf8,
};

function v3(p: Vec3): THREE.Vector3 {
  return new THREE.Vector3(p[0], p[1], p[2]);
}

function triangleMesh(pts: Vec3[], color: number, opacity: number): THREE.Mesh {
  const geometry = new THREE.BufferGeometry();
  geometry.setAttribute(
    "position",
    new THREE.Float32BufferAttribute(pts.flat(), 3),
  );
  geometry.setIndex([0, 1, 2]);
  geometry.computeVertexNormals();
  const material = new THREE.MeshStandardMaterial({
    color,
    side: THREE.DoubleSide,
    transparent: opacity < 1,
    opacity,
  });
  return new THREE.Mesh(geometry, material);
}

function segmentMesh(a: Vec3, b: Vec3, radius: number, color: number, opacity: number): THREE.Mesh {
  const from = v3(a);
  const to = v3(b);
  const length = from.distanceTo(to);
  const geometry = new THREE.CylinderGeometry(radius, radius, Math.max(length, 1e-6), 12);
  const material = new THREE.MeshStandardMaterial({
    color,
    transparent: opacity < 1,
    opacity,
  });
  const mesh = new THREE.Mesh(geometry, material);
  mesh.position.copy(from.clone().add(to).multiplyScalar(0.5));
  mesh.quaternion.setFromUnitVectors(
    new THREE.Vector3(0, 1, 0),
    to.clone().sub(from).normalize(),
  );
  return mesh;
}

function ballMesh(p: Vec3, radius: number, color: number, opacity: number): THREE.Mesh {
  const mesh = new THREE.Mesh(
    new THREE.SphereGeometry(radius, 16, 12),
    new THREE.MeshStandardMaterial({ color, transparent: opacity < 1, opacity }),
  );
  mesh.position.copy(v3(p));
  return mesh;
}

/** One drawn joint pose (solid or ghost). */
function jointGroup(entry: ConfigurationEntry, opacity: number): THREE.Group {
  const cfg = entry.config;
  const scale = cfg.params.ell;
  const group = new THREE.Group();
  group.add(triangleMesh(cfg.base_hinges, COLORS.basePlate, 0.85 * opacity));
  group.add(triangleMesh(cfg.distal_hinges, COLORS.distalPlate, 0.85 * opacity));
  for (let i = 0; i < 3; i++) {
    group.add(segmentMesh(cfg.base_hinges[i], cfg.ball_joints[i], scale * 0.02, COLORS.arm, opacity));
    group.add(segmentMesh(cfg.ball_joints[i], cfg.distal_hinges[i], scale * 0.02, COLORS.arm, opacity));
    group.add(ballMesh(cfg.ball_joints[i], scale * 0.05, COLORS.ball, opacity));
    group.add(ballMesh(cfg.base_hinges[i], scale * 0.035, COLORS.hinge, opacity));
    group.add(ballMesh(cfg.distal_hinges[i], scale * 0.035, COLORS.hinge, opacity));
  }
  const arrow = new THREE.ArrowHelper(
    v3(cfg.distal_normal).normalize(),
    v3(cfg.distal_center),
    scale * 0.6,
    COLORS.pointing,
    scale * 0.15,
    scale * 0.08,
  );
  group.add(arrow);
  return group;
}

export class JointScene {
  private renderer: THREE.WebGLRenderer;
  private scene = new THREE.Scene();
  private camera: THREE.PerspectiveCamera;
  private joint: THREE.Group | null = null;
  private ghost: THREE.Group | null = null;
  private overlayPoints: THREE.Points | null = null;
  private overlaySamples: SweepSample[] = [];
  private overlayPick: ((sample: SweepSample) => void) | null = null;
  private raycaster = new THREE.Raycaster();
  private azimuth = 0.9;
  private polar = 1.1;
  private distance = 28;
  private target = new THREE.Vector3(0, 0, 4);

  constructor(private container: HTMLElement) {
    this.renderer = new THREE.WebGLRenderer({ antialias: true });
    this.renderer.setPixelRatio(window.devicePixelRatio);
    container.appendChild(this.renderer.domElement);
    this.camera = new THREE.PerspectiveCamera(45, 1, 0.1, 500);
    this.camera.up.set(0, 0, 1); // base-plate normal is +z
    this.scene.background = new THREE.Color(0x0b1120);
    this.scene.add(new THREE.AmbientLight(0xffffff, 0.7));
    const sun = new THREE.DirectionalLight(0xffffff, 1.2);
    sun.position.set(12, 8, 20);
    this.scene.add(sun);
    const grid = new THREE.GridHelper(40, 20, 0x1f2937, 0x1f2937);
    grid.rotation.x = Math.PI / 2; // into the base plane z = 0
    this.scene.add(grid);

    this.attachOrbit();
    this.resize();
    window.addEventListener("resize", () => this.resize());
    const animate = () => {
      requestAnimationFrame(animate);
      this.updateCamera();
      this.renderer.render(this.scene, this.camera);
    };
    animate();
  }

  private attachOrbit(): void {
    const el = this.renderer.domElement;
    let dragging = false;
    let lastX = 0;
    let lastY = 0;
    let moved = 0;
    el.addEventListener("pointerdown", (e) => {
      dragging = true;
      moved = 0;
      lastX = e.clientX;
      lastY = e.clientY;
    });
    window.addEventListener("pointermove", (e) => {
      if (!dragging) return;
      const dx = e.clientX - lastX;
      const dy = e.clientY - lastY;
      moved += Math.abs(dx) + Math.abs(dy);
      lastX = e.clientX;
      lastY = e.clientY;
      this.azimuth -= dx * 0.006;
      this.polar = Math.min(Math.max(this.polar - dy * 0.006, 0.05), Math.PI - 0.05);
    });
    window.addEventListener("pointerup", (e) => {
      if (dragging && moved < 4) this.handlePick(e);
      dragging = false;
    });
    el.addEventListener("wheel", (e) => {
      e.preventDefault();
      this.distance = Math.min(Math.max(this.distance * (1 + e.deltaY * 0.001), 5), 120);
    });
  }

  private updateCamera(): void {
    const sp = Math.sin(this.polar);
    this.camera.position.set(
      this.target.x + this.distance * sp * Math.cos(this.azimuth),
      this.target.y + this.distance * sp * Math.sin(this.azimuth),
      this.target.z + this.distance * Math.cos(this.polar),
    );
    this.camera.lookAt(this.target);
  }

  resize(): void {
    const w = this.container.clientWidth || 640;
    const h = this.container.clientHeight || 480;
    this.renderer.setSize(w, h);
    this.camera.aspect = w / h;
    this.camera.updateProjectionMatrix();
  }

  setJoint(entry: ConfigurationEntry | null): void {
    if (this.joint) this.scene.remove(this.joint);
    this.joint = entry ? jointGroup(entry, 1.0) : null;
    if (this.joint) this.scene.add(this.joint);
  }

  setGhost(entry: ConfigurationEntry | null): void {
    if (this.ghost) this.scene.remove(this.ghost);
    this.ghost = entry ? jointGroup(entry, 0.22) : null;
    if (this.ghost) this.scene.add(this.ghost);
  }

  /** Pointing directions drawn on a sphere of the given radius. */
  setOverlay(samples: SweepSample[], radius: number): void {
    this.clearOverlay();
    if (!samples.length) return;
    this.overlaySamples = samples;
    const positions = new Float32Array(samples.length * 3);
    samples.forEach((s, i) => {
      positions[3 * i] = s.pointing[0] * radius;
      positions[3 * i + 1] = s.pointing[1] * radius;
      positions[3 * i + 2] = s.pointing[2] * radius;
    });
    const geometry = new THREE.BufferGeometry();
    geometry.setAttribute("position", new THREE.BufferAttribute(positions, 3));
    const material = new THREE.PointsMaterial({
      color: COLORS.overlay,
      size: radius * 0.02,
      transparent: true,
      opacity: 0.8,
    });
    this.overlayPoints = new THREE.Points(geometry, material);
    this.scene.add(this.overlayPoints);
  }

  clearOverlay(): void {
    if (this.overlayPoints) {
      this.scene.remove(this.overlayPoints);
      this.overlayPoints = null;
      this.overlaySamples = [];
    }
  }

  onOverlayPick(cb: (sample: SweepSample) => void): void {
    this.overlayPick = cb;
  }

  private handlePick(event: PointerEvent): void {
    if (!this.overlayPoints || !this.overlayPick) return;
    const rect = this.renderer.domElement.getBoundingClientRect();
    const ndc = new THREE.Vector2(
      ((event.clientX - rect.left) / rect.width) * 2 - 1,
      -((event.clientY - rect.top) / rect.height) * 2 + 1,
    );
    this.raycaster.params.Points = { threshold: 0.25 };
    this.raycaster.setFromCamera(ndc, this.camera);
    const hits = this.raycaster.intersectObject(this.overlayPoints);
    const index = hits[0]?.index;
    if (index !== undefined && this.overlaySamples[index]) {
      this.overlayPick(this.overlaySamples[index]);
    }
  }
}

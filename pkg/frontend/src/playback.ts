// Keyframe playback: linear interpolation for scalar/position tracks,
// step interpolation for z-order and visibility, a loop-aware clock.

import type { AnimationDocument, Keyframe, Track } from './types.js';

export interface Pose {
  position: [number, number] | null;
  opacity: number;
  scale: number;
  rotation: number;
  visible: boolean;
  zOrder: number | null;
}

function frameTimes(track: Track): number[] {
  return track.keyframes.map((kf) => kf[0]);
}

/** Index of the last keyframe at or before t (clamped to the first). */
function lowerIndex(times: number[], t: number): number {
  let lo = 0;
  let hi = times.length - 1;
  if (t <= times[0]) return 0;
  if (t >= times[hi]) return hi;
  while (hi - lo > 1) {
    const mid = (lo + hi) >> 1;
    if (times[mid] <= t) lo = mid;
    else hi = mid;
  }
  return lo;
}

export function positionAt(track: Track, t: number): [number, number] {
  const times = frameTimes(track);
  const i = lowerIndex(times, t);
  const [t0, v0] = track.keyframes[i] as [number, [number, number]];
  if (i === times.length - 1 || t <= t0) return [v0[0], v0[1]];
  const [t1, v1] = track.keyframes[i + 1] as [number, [number, number]];
  const u = (t - t0) / (t1 - t0);
  return [v0[0] + (v1[0] - v0[0]) * u, v0[1] + (v1[1] - v0[1]) * u];
}

export function scalarAt(track: Track, t: number): number {
  const times = frameTimes(track);
  const i = lowerIndex(times, t);
  const [t0, v0] = track.keyframes[i] as [number, number];
  if (i === times.length - 1 || t <= t0) return v0;
  const [t1, v1] = track.keyframes[i + 1] as [number, number];
  return v0 + ((v1 - v0) * (t - t0)) / (t1 - t0);
}

export function stepAt<T>(keyframes: Keyframe[], t: number): T {
  const times = keyframes.map((kf) => kf[0]);
  return keyframes[lowerIndex(times, t)][1] as T;
}

export class Timeline {
  readonly duration: number;
  readonly objectIds: string[];
  private byObject = new Map<string, Track[]>();

  constructor(readonly doc: AnimationDocument) {
    this.duration = doc.duration_ms;
    for (const track of doc.tracks) {
      const list = this.byObject.get(track.object_id) ?? [];
      list.push(track);
      this.byObject.set(track.object_id, list);
    }
    this.objectIds = [...this.byObject.keys()];
  }

  private track(objectId: string, property: string): Track | undefined {
    return this.byObject.get(objectId)?.find((t) => t.property === property);
  }

  poseAt(objectId: string, t: number): Pose {
    const pose: Pose = {
      position: null,
      opacity: 1,
      scale: 1,
      rotation: 0,
      visible: true,
      zOrder: null,
    };
    const pos = this.track(objectId, 'position');
    if (pos) pose.position = positionAt(pos, t);
    const opacity = this.track(objectId, 'opacity');
    if (opacity) pose.opacity = scalarAt(opacity, t);
    const scale = this.track(objectId, 'scale');
    if (scale) pose.scale = scalarAt(scale, t);
    const rotation = this.track(objectId, 'rotation');
    if (rotation) pose.rotation = scalarAt(rotation, t);
    const vis = this.track(objectId, 'visibility');
    if (vis) pose.visible = stepAt<boolean>(vis.keyframes, t);
    const z = this.track(objectId, 'z_order');
    if (z) pose.zOrder = stepAt<number>(z.keyframes, t);
    return pose;
  }

  /**
   * Time spans (per loop) where the object's animated z-order drops below
   * the given threshold — i.e. it renders behind the occluder.
   */
  behindIntervals(objectId: string, occluderZ: number): [number, number][] {
    const z = this.track(objectId, 'z_order');
    if (!z) return [];
    const out: [number, number][] = [];
    let openedAt: number | null = null;
    for (const [t, v] of z.keyframes as [number, number][]) {
      if (v < occluderZ && openedAt === null) openedAt = t;
      else if (v >= occluderZ && openedAt !== null) {
        out.push([openedAt, t]);
        openedAt = null;
      }
    }
    if (openedAt !== null) out.push([openedAt, this.duration]);
    return out;
  }
}

/** Wall-clock independent playback cursor; pause/resume keeps the time. */
export class PlaybackClock {
  current = 0;
  playing = false;

  constructor(readonly duration: number, readonly loop: boolean) {}

  play(): void {
    if (!this.loop && this.current >= this.duration) this.current = 0;
    this.playing = true;
  }

  pause(): void {
    this.playing = false;
  }

  seek(t: number): void {
    this.current = Math.min(Math.max(t, 0), this.duration);
  }

  advance(dtMs: number): void {
    if (!this.playing) return;
    this.current += dtMs;
    if (this.current > this.duration) {
      if (this.loop) this.current %= this.duration;
      else {
        this.current = this.duration;
        this.playing = false;
      }
    }
  }
}

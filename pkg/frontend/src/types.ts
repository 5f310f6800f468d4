// Wire types for the genanim serve protocol and animation documents.

export type TrackProperty =
  | 'position'
  | 'opacity'
  | 'scale'
  | 'rotation'
  | 'z_order'
  | 'visibility';

export type Keyframe = [number, number | boolean | [number, number]];

export interface MotionPath {
  closed: boolean;
  // each segment is [p0, c1, c2, p3], points as [x, y]
  segments: [number, number][][];
}

export interface Track {
  object_id: string;
  property: TrackProperty;
  easing: string;
  keyframes: Keyframe[];
  motion_path?: MotionPath;
}

export interface AnimationDocument {
  scene_ref: string;
  duration_ms: number;
  loop: boolean;
  tracks: Track[];
}

export interface CandidatePayload {
  bounds: [number, number, number, number];
  mask_png_b64: string;
  object_id: string | null;
  score: number;
}

export interface PromptReply {
  state: string;
  intent: Record<string, unknown>;
  candidates: CandidatePayload[];
  resolved: number | null;
  warnings: string[];
  backend: string;
}

export interface ClickReply {
  state: string;
  resolved: number;
  mask_png_b64: string;
}

export interface SceneObjectInfo {
  id: string;
  name: string;
  bounds: [number, number, number, number];
  anchor: [number, number];
  z_order: number;
}

export interface SessionState {
  id: string;
  state: string;
  canvas: { width: number; height: number };
  objects: SceneObjectInfo[];
}

// DOM wiring: prompt box, candidate overlays with click disambiguation,
// and canvas playback with a scrub bar. All math lives in the modules.

import { httpApi } from './api.js';
import { pathPolyline } from './bezier.js';
import { displayToCanvas, tintFor } from './overlay.js';
import { PlaybackClock, Timeline } from './playback.js';
import { UiSession } from './state.js';
import type { SceneObjectInfo } from './types.js';

const $ = <T extends HTMLElement>(id: string): T => document.getElementById(id) as T;

const canvas = $('stage') as unknown as HTMLCanvasElement;
const ctx = canvas.getContext('2d') as CanvasRenderingContext2D;
const statusLine = $('status');
const promptInput = $('prompt') as unknown as HTMLInputElement;
const scenePathInput = $('scene-path') as unknown as HTMLInputElement;
const scrub = $('scrub') as unknown as HTMLInputElement;
const playButton = $('play') as unknown as HTMLButtonElement;
const retryButton = $('retry') as unknown as HTMLButtonElement;

const session = new UiSession(httpApi);

let artwork: HTMLImageElement | null = null;
let clearedArtwork: HTMLCanvasElement | null = null;
let maskImages: HTMLImageElement[] = [];
let timeline: Timeline | null = null;
let clock: PlaybackClock | null = null;

function setStatus(text: string): void {
  statusLine.textContent = text;
}

function loadImage(src: string): Promise<HTMLImageElement> {
  return new Promise((resolve, reject) => {
    const img = new Image();
    img.onload = () => resolve(img);
    img.onerror = () => reject(new Error(`cannot load ${src}`));
    img.src = src;
  });
}

function tintedMask(mask: HTMLImageElement, tint: string): HTMLCanvasElement {
  const off = document.createElement('canvas');
  off.width = mask.width;
  off.height = mask.height;
  const c = off.getContext('2d') as CanvasRenderingContext2D;
  c.drawImage(mask, 0, 0);
  c.globalCompositeOperation = 'source-in';
  c.fillStyle = tint;
  c.fillRect(0, 0, off.width, off.height);
  return off;
}

function prepareClearedArtwork(objects: SceneObjectInfo[]): void {
  if (!artwork || !timeline) return;
  const off = document.createElement('canvas');
  off.width = artwork.width;
  off.height = artwork.height;
  const c = off.getContext('2d') as CanvasRenderingContext2D;
  c.drawImage(artwork, 0, 0);
  for (const obj of objects) {
    if (timeline.objectIds.includes(obj.id)) {
      const [x, y, w, h] = obj.bounds;
      c.clearRect(Math.floor(x), Math.floor(y), Math.ceil(w), Math.ceil(h));
    }
  }
  clearedArtwork = off;
}

function drawSprite(obj: SceneObjectInfo, t: number): void {
  if (!artwork || !timeline) return;
  const pose = timeline.poseAt(obj.id, t);
  if (!pose.visible || !pose.position) return;
  const [bx, by, bw, bh] = obj.bounds;
  const [ax, ay] = obj.anchor;
  ctx.save();
  ctx.globalAlpha = pose.opacity;
  ctx.translate(pose.position[0], pose.position[1]);
  ctx.rotate((pose.rotation * Math.PI) / 180);
  ctx.scale(pose.scale, pose.scale);
  ctx.drawImage(artwork, bx, by, bw, bh, bx - ax, by - ay, bw, bh);
  ctx.restore();
}

function render(): void {
  ctx.fillStyle = '#101018';
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  if (!artwork || !session.scene) return;

  if (session.phase === 'previewing' && timeline && clock && clearedArtwork) {
    const t = clock.current;
    const objects = session.scene.objects;
    const artworkZ = Math.max(
      0, ...objects.filter((o) => !timeline!.objectIds.includes(o.id)).map((o) => o.z_order));
    const animated = objects.filter((o) => timeline!.objectIds.includes(o.id));
    for (const obj of animated) {
      const z = timeline.poseAt(obj.id, t).zOrder ?? obj.z_order;
      if (z < artworkZ) drawSprite(obj, t);
    }
    ctx.drawImage(clearedArtwork, 0, 0);
    for (const obj of animated) {
      const z = timeline.poseAt(obj.id, t).zOrder ?? obj.z_order;
      if (z >= artworkZ) drawSprite(obj, t);
    }
    const positionTrack = timeline.doc.tracks.find(
      (tr) => tr.property === 'position' && tr.motion_path);
    if (positionTrack?.motion_path) {
      ctx.strokeStyle = 'rgba(220, 70, 60, 0.8)';
      ctx.lineWidth = 1.5;
      ctx.beginPath();
      for (const [i, [x, y]] of pathPolyline(positionTrack.motion_path).entries()) {
        if (i === 0) ctx.moveTo(x, y);
        else ctx.lineTo(x, y);
      }
      ctx.stroke();
    }
    scrub.value = String(Math.round(t));
    return;
  }

  ctx.drawImage(artwork, 0, 0);
  if (session.phase === 'awaiting_click') {
    session.candidates.forEach((cand, i) => {
      if (maskImages[i]) ctx.drawImage(tintedMask(maskImages[i], tintFor(i)), 0, 0);
      const [x, y] = cand.bounds;
      ctx.fillStyle = '#ffffff';
      ctx.font = '14px sans-serif';
      ctx.fillText(`#${i} score ${cand.score.toFixed(2)}`, x + 4, Math.max(14, y - 4));
    });
  }
}

function tick(last: number): void {
  requestAnimationFrame((now) => {
    if (clock?.playing) {
      clock.advance(now - last);
      render();
    }
    tick(now);
  });
}

session.onChange = async () => {
  setStatus(`phase: ${session.phase}`
    + (session.errorMessage ? ` — ${session.errorMessage}` : '')
    + (session.warnings.length ? ` — ${session.warnings.join('; ')}` : ''));
  retryButton.hidden = session.phase !== 'error';

  if (session.scene && !artwork && session.sessionId) {
    canvas.width = session.scene.canvas.width;
    canvas.height = session.scene.canvas.height;
    artwork = await loadImage(httpApi.artworkUrl(session.sessionId));
  }
  if (session.phase === 'awaiting_click') {
    maskImages = await Promise.all(session.candidates.map(
      (c) => loadImage(`data:image/png;base64,${c.mask_png_b64}`)));
  }
  if (session.phase === 'previewing' && session.animation && session.scene) {
    timeline = new Timeline(session.animation);
    clock = new PlaybackClock(session.animation.duration_ms, session.animation.loop);
    scrub.max = String(session.animation.duration_ms);
    prepareClearedArtwork(session.scene.objects);
    clock.play();
    playButton.textContent = 'pause';
  }
  render();
};

$('load').addEventListener('click', () => void session.start(scenePathInput.value));
$('go').addEventListener('click', () => void session.submitPrompt(promptInput.value));
promptInput.addEventListener('keydown', (e) => {
  if ((e as KeyboardEvent).key === 'Enter') void session.submitPrompt(promptInput.value);
});
retryButton.addEventListener('click', () => void session.retry());

canvas.addEventListener('click', (event) => {
  if (session.phase !== 'awaiting_click') return;
  const rect = canvas.getBoundingClientRect();
  const mouse = event as MouseEvent;
  const { x, y } = displayToCanvas(
    mouse.clientX, mouse.clientY,
    { left: rect.left, top: rect.top, width: rect.width, height: rect.height },
    canvas.width, canvas.height);
  void session.clickAt(x, y);
});

playButton.addEventListener('click', () => {
  if (!clock) return;
  if (clock.playing) {
    clock.pause();
    playButton.textContent = 'play';
  } else {
    clock.play();
    playButton.textContent = 'pause';
  }
});

scrub.addEventListener('input', () => {
  clock?.seek(Number(scrub.value));
  render();
});

setStatus('phase: idle — load a scene to begin');
tick(performance.now());

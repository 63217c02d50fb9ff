// Zoom/pan view transform between screen (canvas device pixels) and
// image coordinates. screen = image * scale + offset on both axes.

export interface ViewTransform {
  scale: number
  offsetX: number
  offsetY: number
}

export interface Point {
  x: number
  y: number
}

export const MIN_SCALE = 0.05
export const MAX_SCALE = 64

export function identity(): ViewTransform {
  return { scale: 1, offsetX: 0, offsetY: 0 }
}

/** Scale-to-fit with the image centered in the viewport. */
export function fitTransform(imageW: number, imageH: number,
                             viewW: number, viewH: number): ViewTransform {
  const scale = Math.min(viewW / imageW, viewH / imageH)
  return {
    scale,
    offsetX: (viewW - imageW * scale) / 2,
    offsetY: (viewH - imageH * scale) / 2,
  }
}

export function imageToScreen(t: ViewTransform, p: Point): Point {
  return { x: p.x * t.scale + t.offsetX, y: p.y * t.scale + t.offsetY }
}

export function screenToImage(t: ViewTransform, p: Point): Point {
  return { x: (p.x - t.offsetX) / t.scale, y: (p.y - t.offsetY) / t.scale }
}

/**
 * Integer pixel (col, row) under a screen point, or null when it falls
 * outside the image. This is the quantization step; the continuous
 * mapping above is the exact inverse pair.
 */
export function screenToPixel(t: ViewTransform, p: Point,
                              imageW: number, imageH: number): { col: number; row: number } | null {
  const img = screenToImage(t, p)
  const col = Math.floor(img.x)
  const row = Math.floor(img.y)
  if (col < 0 || row < 0 || col >= imageW || row >= imageH) return null
  return { col, row }
}

export function pan(t: ViewTransform, dx: number, dy: number): ViewTransform {
  return { scale: t.scale, offsetX: t.offsetX + dx, offsetY: t.offsetY + dy }
}

/** Zoom by `factor` keeping the image point under `anchor` fixed. */
export function zoomAt(t: ViewTransform, anchor: Point, factor: number): ViewTransform {
  const scale = Math.min(MAX_SCALE, Math.max(MIN_SCALE, t.scale * factor))
  const applied = scale / t.scale
  return {
    scale,
    offsetX: anchor.x - (anchor.x - t.offsetX) * applied,
    offsetY: anchor.y - (anchor.y - t.offsetY) * applied,
  }
}

/** Closed SVG-style path of ring pixel centers in screen space. */
export function ringToScreenPath(t: ViewTransform,
                                 ring: [number, number][]): Point[] {
  return ring.map(([col, row]) =>
    imageToScreen(t, { x: col + 0.5, y: row + 0.5 }))
}

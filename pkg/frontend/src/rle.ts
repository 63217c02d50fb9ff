// Run-length mask codec matching the service wire format: row-major,
// alternating false/true run lengths starting with false.

import type { RleMask } from './types.js'

export function decodeRle(mask: RleMask): Uint8Array {
  const { width, height, runs } = mask
  const out = new Uint8Array(width * height)
  let pos = 0
  let value = 0
  for (const run of runs) {
    if (run < 0) throw new Error('negative run length')
    if (value) out.fill(1, pos, pos + run)
    pos += run
    value ^= 1
  }
  if (pos !== width * height) {
    throw new Error(`runs cover ${pos} pixels, mask is ${width * height}`)
  }
  return out
}

export function countOn(mask: Uint8Array): number {
  let n = 0
  for (const v of mask) n += v
  return n
}

/** RGBA overlay bytes for a decoded mask (premultiplied color fill). */
export function maskToRgba(mask: Uint8Array, rgba: [number, number, number, number]): Uint8ClampedArray {
  const out = new Uint8ClampedArray(mask.length * 4)
  for (let i = 0; i < mask.length; i++) {
    if (mask[i]) {
      out[4 * i] = rgba[0]
      out[4 * i + 1] = rgba[1]
      out[4 * i + 2] = rgba[2]
      out[4 * i + 3] = rgba[3]
    }
  }
  return out
}

import { describe, expect, it } from 'vitest'
import { buildRegisterRequest, initialState, registrationProblems,
         describeMeasurements, DEFAULT_INDEX_KIND } from '../src/state.js'
import type { SceneSummary, SegmentResponse } from '../src/types.js'

const SCENE = { scene_id: 'LT50080662009179CUB00' } as SceneSummary

const SEGMENT: SegmentResponse = {
  scene_id: 'LT50080662009179CUB00',
  index_kind: 'mndwi',
  threshold: 0.01,
  window: 101,
  pixel_count: 2821,
  area_km2: 2.5389,
  perimeter_km: 5.883,
  p_lado: 160,
  p_diag: 60,
  centroid_pixel: { row: 100, col: 100 },
  centroid_utm: { easting: 193000, northing: 9097000 },
  centroid: { lat: -8.159, lon: -77.786 },
  admin: { region: 'Ancash', provincia: 'Pallasca', distrito: 'Pampas' },
  border_ring_pixels: [[1, 1], [2, 1]],
  border_ring: [[-77.79, -8.16], [-77.78, -8.16]],
  mask_rle: { width: 200, height: 200, runs: [40000] },
  flags: [],
}

function readyState() {
  const state = initialState()
  state.scene = SCENE
  state.lastSegment = SEGMENT
  state.form = { name: 'Pelagatos', cuenca: 'Santa' }
  return state
}

describe('view state', () => {
  it('defaults to the MNDWI index', () => {
    expect(initialState().indexKind).toBe(DEFAULT_INDEX_KIND)
    expect(DEFAULT_INDEX_KIND).toBe('mndwi')
  })

  it('blocks registration with an empty name client-side', () => {
    const state = readyState()
    state.form.name = '   '
    expect(registrationProblems(state)).toContain('name must not be empty')
    expect(() => buildRegisterRequest(state)).toThrow(/blocked/)
  })

  it('blocks registration without a segmentation', () => {
    const state = readyState()
    state.lastSegment = null
    expect(registrationProblems(state)).toContain('no segmentation to register')
  })

  it('a complete state has no problems', () => {
    expect(registrationProblems(readyState())).toEqual([])
  })

  it('builds the registry request from the last segmentation', () => {
    const body = buildRegisterRequest(readyState())
    expect(body).toMatchObject({
      scene_id: SEGMENT.scene_id,
      name: 'Pelagatos',
      cuenca: 'Santa',
      area_km2: 2.5389,
      centroid_lat: -8.159,
      centroid_lon: -77.786,
      distrito: 'Pampas',
    })
    expect(body.border_ring).toEqual(SEGMENT.border_ring)
  })

  it('trims form whitespace', () => {
    const state = readyState()
    state.form = { name: '  Pelagatos ', cuenca: ' Santa ' }
    const body = buildRegisterRequest(state)
    expect(body.name).toBe('Pelagatos')
    expect(body.cuenca).toBe('Santa')
  })

  it('describes measurements for the panel', () => {
    const lines = describeMeasurements(SEGMENT)
    expect(lines.some(l => l.includes('2.5389'))).toBe(true)
    expect(lines.some(l => l.includes('Pampas, Pallasca, Ancash'))).toBe(true)
  })
})

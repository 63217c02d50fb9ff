// Client view state: current scene, index kind, transform, the last
// segmentation, and the pending registration form. Registration is the
// only operation that writes to the server.

import type { ViewTransform } from './transform.js'
import { identity } from './transform.js'
import type { RegisterRequest, SceneSummary, SegmentResponse } from './types.js'

export interface RegistrationForm {
  name: string
  cuenca: string
}

export interface ViewState {
  scene: SceneSummary | null
  indexKind: string
  transform: ViewTransform
  lastSegment: SegmentResponse | null
  form: RegistrationForm
}

export const DEFAULT_INDEX_KIND = 'mndwi'

export function initialState(): ViewState {
  return {
    scene: null,
    indexKind: DEFAULT_INDEX_KIND,
    transform: identity(),
    lastSegment: null,
    form: { name: '', cuenca: '' },
  }
}

/** Client-side gating for the register button; empty name never leaves
 * the browser. */
export function registrationProblems(state: ViewState): string[] {
  const problems: string[] = []
  if (!state.scene) problems.push('no scene selected')
  if (!state.lastSegment) problems.push('no segmentation to register')
  if (!state.form.name.trim()) problems.push('name must not be empty')
  if (!state.form.cuenca.trim()) problems.push('cuenca must not be empty')
  return problems
}

export function buildRegisterRequest(state: ViewState): RegisterRequest {
  const problems = registrationProblems(state)
  if (problems.length > 0) {
    throw new Error(`registration blocked: ${problems.join('; ')}`)
  }
  const seg = state.lastSegment!
  return {
    scene_id: seg.scene_id,
    name: state.form.name.trim(),
    cuenca: state.form.cuenca.trim(),
    area_km2: seg.area_km2,
    perimeter_km: seg.perimeter_km,
    centroid_lat: seg.centroid.lat,
    centroid_lon: seg.centroid.lon,
    region: seg.admin.region,
    provincia: seg.admin.provincia,
    distrito: seg.admin.distrito,
    border_ring: seg.border_ring,
  }
}

export function describeMeasurements(seg: SegmentResponse): string[] {
  const admin = [seg.admin.distrito, seg.admin.provincia, seg.admin.region]
    .filter((n): n is string => !!n)
  return [
    `area: ${seg.area_km2.toFixed(4)} km²`,
    `perimeter: ${seg.perimeter_km.toFixed(3)} km`,
    `centroid: ${seg.centroid.lat.toFixed(6)}, ${seg.centroid.lon.toFixed(6)}`,
    `threshold: ${seg.threshold.toFixed(4)} (${seg.index_kind})`,
    admin.length ? `location: ${admin.join(', ')}` : 'location: unknown',
  ]
}

// Wire types mirroring the service's JSON responses.

export interface SceneBounds {
  ul_easting: number
  ul_northing: number
  lr_easting: number
  lr_northing: number
}

export interface SceneSummary {
  scene_id: string
  date: string
  rows: number
  cols: number
  utm_zone: number
  cloud_cover: number
  bounds: SceneBounds
}

export interface AdminNames {
  region: string | null
  provincia: string | null
  distrito: string | null
}

export interface RleMask {
  width: number
  height: number
  runs: number[]
}

export interface SegmentRequest {
  kind: string
  seed: [number, number]  // (col, row)
  window?: number
  max_radius?: number
}

export interface SegmentResponse {
  scene_id: string
  index_kind: string
  threshold: number
  window: number
  pixel_count: number
  area_km2: number
  perimeter_km: number
  p_lado: number
  p_diag: number
  centroid_pixel: { row: number; col: number }
  centroid_utm: { easting: number; northing: number }
  centroid: { lat: number; lon: number }
  admin: AdminNames
  border_ring_pixels: [number, number][]  // (col, row)
  border_ring: [number, number][]         // (lon, lat)
  mask_rle: RleMask
  flags: string[]
}

export interface RegisterRequest {
  scene_id: string
  name: string
  cuenca: string
  area_km2: number
  perimeter_km: number
  centroid_lat: number
  centroid_lon: number
  region: string | null
  provincia: string | null
  distrito: string | null
  border_ring: [number, number][] | null
}

export interface RegistryRecord extends RegisterRequest {
  year: number
  registered_at: string
}

export interface TimelineResponse {
  name: string
  points: [number, number][]  // [year, area_km2]
  areas: number[]
  deltas: number[]
}

export interface ApiErrorBody {
  code: string
  message: string
  detail?: string
}

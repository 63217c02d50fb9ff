// Typed client over the segmentation service. The fetch function is
// injectable so tests can stub the network.

import type {
  ApiErrorBody, RegisterRequest, RegistryRecord, SceneSummary,
  SegmentRequest, SegmentResponse, TimelineResponse,
} from './types.js'

export class ApiError extends Error {
  constructor(public status: number, public body: ApiErrorBody) {
    super(body.message || `HTTP ${status}`)
  }

  get code(): string {
    return this.body.code
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>

export class ApiClient {
  constructor(private baseUrl: string = '',
              private fetchFn: FetchLike = (...args) => fetch(...args)) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, init)
    if (!response.ok) {
      let body: ApiErrorBody
      try {
        body = await response.json() as ApiErrorBody
      } catch {
        body = { code: 'http_error', message: `HTTP ${response.status}` }
      }
      throw new ApiError(response.status, body)
    }
    return await response.json() as T
  }

  listScenes(): Promise<SceneSummary[]> {
    return this.request<SceneSummary[]>('/scenes')
  }

  compositeUrl(sceneId: string, bands = '5,4,3'): string {
    return `${this.baseUrl}/scenes/${encodeURIComponent(sceneId)}/composite` +
      `?bands=${encodeURIComponent(bands)}&format=png`
  }

  segment(sceneId: string, req: SegmentRequest,
          signal?: AbortSignal): Promise<SegmentResponse> {
    return this.request<SegmentResponse>(
      `/scenes/${encodeURIComponent(sceneId)}/segment`,
      {
        method: 'POST',
        headers: { 'content-type': 'application/json' },
        body: JSON.stringify(req),
        signal,
      })
  }

  register(record: RegisterRequest): Promise<{ id: number }> {
    return this.request<{ id: number }>('/registry', {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(record),
    })
  }

  listRecords(name?: string): Promise<RegistryRecord[]> {
    const query = name ? `?name=${encodeURIComponent(name)}` : ''
    return this.request<RegistryRecord[]>(`/registry${query}`)
  }

  timeline(name: string): Promise<TimelineResponse> {
    return this.request<TimelineResponse>(
      `/registry/${encodeURIComponent(name)}/timeline`)
  }
}

/**
 * Keeps at most one segmentation request in flight: a new run aborts
 * the previous one, whose promise resolves to null.
 */
export class SegmentationGate {
  private controller: AbortController | null = null

  async run(client: ApiClient, sceneId: string,
            req: SegmentRequest): Promise<SegmentResponse | null> {
    this.controller?.abort()
    const controller = new AbortController()
    this.controller = controller
    try {
      return await client.segment(sceneId, req, controller.signal)
    } catch (error) {
      if (controller.signal.aborted) return null
      throw error
    } finally {
      if (this.controller === controller) this.controller = null
    }
  }

  get busy(): boolean {
    return this.controller !== null
  }
}

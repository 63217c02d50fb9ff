// DOM wiring for the analyst workflow: scene picker, composite viewer
// with zoom/pan, seed-click segmentation, registration form, timeline.

import { ApiClient, ApiError, SegmentationGate } from './api.js'
import { ringToScreenPath, fitTransform, pan, screenToPixel, zoomAt } from './transform.js'
import { buildRegisterRequest, describeMeasurements, initialState,
         registrationProblems } from './state.js'
import type { ViewState } from './state.js'
import { renderTimelineSvg, timelineModel } from './timeline.js'
import type { SceneSummary } from './types.js'

const SEED_DEFAULTS = { window: 101, max_radius: 25 }

export class App {
  private state: ViewState = initialState()
  private gate = new SegmentationGate()
  private image: HTMLImageElement | null = null

  constructor(private client: ApiClient,
              private canvas: HTMLCanvasElement,
              private ui: {
                sceneSelect: HTMLSelectElement
                kindSelect: HTMLSelectElement
                measurements: HTMLElement
                toast: HTMLElement
                nameInput: HTMLInputElement
                cuencaInput: HTMLInputElement
                registerButton: HTMLButtonElement
                timelineInput: HTMLInputElement
                timelineButton: HTMLButtonElement
                timelineChart: HTMLElement
              }) {}

  async start(): Promise<void> {
    const scenes = await this.client.listScenes()
    this.ui.sceneSelect.innerHTML = ''
    for (const scene of scenes) {
      const option = document.createElement('option')
      option.value = scene.scene_id
      option.textContent = `${scene.scene_id} (${scene.date})`
      this.ui.sceneSelect.appendChild(option)
    }
    this.ui.sceneSelect.addEventListener('change', () => {
      const scene = scenes.find(s => s.scene_id === this.ui.sceneSelect.value)
      if (scene) void this.loadScene(scene)
    })
    this.ui.kindSelect.value = this.state.indexKind
    this.ui.kindSelect.addEventListener('change', () => {
      this.state.indexKind = this.ui.kindSelect.value
    })
    this.wireCanvas()
    this.wireRegistration()
    this.wireTimeline()
    if (scenes.length > 0) await this.loadScene(scenes[0])
  }

  private async loadScene(scene: SceneSummary): Promise<void> {
    this.state.scene = scene
    this.state.lastSegment = null
    const image = new Image()
    image.src = this.client.compositeUrl(scene.scene_id)
    await image.decode()
    this.image = image
    this.state.transform = fitTransform(image.width, image.height,
                                        this.canvas.width, this.canvas.height)
    this.redraw()
  }

  private wireCanvas(): void {
    let dragging = false
    let moved = false
    let last = { x: 0, y: 0 }
    this.canvas.addEventListener('pointerdown', event => {
      dragging = true
      moved = false
      last = this.canvasPoint(event)
    })
    this.canvas.addEventListener('pointermove', event => {
      if (!dragging) return
      const p = this.canvasPoint(event)
      if (Math.abs(p.x - last.x) + Math.abs(p.y - last.y) > 2) moved = true
      this.state.transform = pan(this.state.transform, p.x - last.x, p.y - last.y)
      last = p
      this.redraw()
    })
    this.canvas.addEventListener('pointerup', event => {
      dragging = false
      if (!moved) void this.clickToSegment(this.canvasPoint(event))
    })
    this.canvas.addEventListener('wheel', event => {
      event.preventDefault()
      const factor = event.deltaY < 0 ? 1.2 : 1 / 1.2
      this.state.transform = zoomAt(this.state.transform,
                                    this.canvasPoint(event), factor)
      this.redraw()
    })
  }

  private canvasPoint(event: MouseEvent): { x: number; y: number } {
    const rect = this.canvas.getBoundingClientRect()
    return {
      x: (event.clientX - rect.left) * (this.canvas.width / rect.width),
      y: (event.clientY - rect.top) * (this.canvas.height / rect.height),
    }
  }

  async clickToSegment(screen: { x: number; y: number }): Promise<void> {
    if (!this.state.scene || !this.image) return
    const pixel = screenToPixel(this.state.transform, screen,
                                this.image.width, this.image.height)
    if (pixel === null) return  // clicks outside the image are ignored
    try {
      const response = await this.gate.run(this.client, this.state.scene.scene_id, {
        kind: this.state.indexKind,
        seed: [pixel.col, pixel.row],
        ...SEED_DEFAULTS,
      })
      if (response === null) return  // replaced by a newer click
      this.state.lastSegment = response
      this.showMeasurements()
      this.redraw()
    } catch (error) {
      if (error instanceof ApiError && error.status === 422) {
        this.toast('no water body near click')
      } else {
        this.toast(`segmentation failed: ${(error as Error).message}`)
      }
    }
  }

  private showMeasurements(): void {
    const seg = this.state.lastSegment
    this.ui.measurements.innerHTML = ''
    if (!seg) return
    for (const line of describeMeasurements(seg)) {
      const div = document.createElement('div')
      div.textContent = line
      this.ui.measurements.appendChild(div)
    }
  }

  private redraw(): void {
    const ctx = this.canvas.getContext('2d')
    if (!ctx || !this.image) return
    const t = this.state.transform
    ctx.save()
    ctx.clearRect(0, 0, this.canvas.width, this.canvas.height)
    ctx.imageSmoothingEnabled = t.scale < 1
    ctx.setTransform(t.scale, 0, 0, t.scale, t.offsetX, t.offsetY)
    ctx.drawImage(this.image, 0, 0)
    ctx.restore()
    const seg = this.state.lastSegment
    if (seg && seg.border_ring_pixels.length > 1) {
      const path = ringToScreenPath(t, seg.border_ring_pixels)
      ctx.save()
      ctx.strokeStyle = '#ffee00'
      ctx.lineWidth = 2
      ctx.beginPath()
      ctx.moveTo(path[0].x, path[0].y)
      for (const p of path.slice(1)) ctx.lineTo(p.x, p.y)
      ctx.closePath()
      ctx.stroke()
      ctx.restore()
    }
  }

  private wireRegistration(): void {
    const syncForm = () => {
      this.state.form.name = this.ui.nameInput.value
      this.state.form.cuenca = this.ui.cuencaInput.value
      this.ui.registerButton.disabled = registrationProblems(this.state).length > 0
    }
    this.ui.nameInput.addEventListener('input', syncForm)
    this.ui.cuencaInput.addEventListener('input', syncForm)
    this.ui.registerButton.addEventListener('click', () => void this.registerCurrent())
    syncForm()
  }

  async registerCurrent(): Promise<void> {
    if (registrationProblems(this.state).length > 0) return
    try {
      const { id } = await this.client.register(buildRegisterRequest(this.state))
      this.toast(`registered as record ${id}`, 'ok')
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        this.toast('already registered for this scene (duplicate)')
      } else {
        this.toast(`registration failed: ${(error as Error).message}`)
      }
    }
  }

  private wireTimeline(): void {
    this.ui.timelineButton.addEventListener('click', () => void this.showTimeline())
  }

  async showTimeline(): Promise<void> {
    const name = this.ui.timelineInput.value.trim()
    if (!name) return
    try {
      const response = await this.client.timeline(name)
      this.ui.timelineChart.innerHTML = renderTimelineSvg(timelineModel(response))
    } catch (error) {
      if (error instanceof ApiError && error.status === 404) {
        this.ui.timelineChart.innerHTML =
          renderTimelineSvg({ name, points: [], deltas: [] })
      } else {
        this.toast(`timeline failed: ${(error as Error).message}`)
      }
    }
  }

  private toast(message: string, kind: 'err' | 'ok' = 'err'): void {
    this.ui.toast.textContent = message
    this.ui.toast.className = `toast ${kind}`
    setTimeout(() => { this.ui.toast.className = 'toast hidden' }, 4000)
  }
}

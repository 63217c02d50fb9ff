// Year-vs-area chart model and a dependency-free SVG renderer with the
// year-to-year deltas labeled between points.

import type { TimelineResponse } from './types.js'

export interface TimelinePoint {
  year: number
  area: number
}

export interface DeltaLabel {
  fromYear: number
  toYear: number
  delta: number
  label: string
}

export interface TimelineModel {
  name: string
  points: TimelinePoint[]
  deltas: DeltaLabel[]
}

export function formatDelta(delta: number): string {
  const sign = delta >= 0 ? '+' : '-'
  return `${sign}${Math.abs(delta).toFixed(4)} km²`
}

export function timelineModel(response: TimelineResponse): TimelineModel {
  const points = response.points.map(([year, area]) => ({ year, area }))
  const deltas = response.deltas.map((delta, i) => ({
    fromYear: points[i].year,
    toYear: points[i + 1].year,
    delta,
    label: formatDelta(delta),
  }))
  return { name: response.name, points, deltas }
}

const PAD = 40

export function renderTimelineSvg(model: TimelineModel,
                                  width = 460, height = 240): string {
  if (model.points.length === 0) {
    return `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}">` +
      `<text x="${width / 2}" y="${height / 2}" text-anchor="middle" ` +
      `class="empty">no records</text></svg>`
  }
  const years = model.points.map(p => p.year)
  const areas = model.points.map(p => p.area)
  const yearMin = Math.min(...years)
  const yearMax = Math.max(...years)
  const areaMin = Math.min(...areas)
  const areaMax = Math.max(...areas)
  const yearSpan = yearMax - yearMin || 1
  const areaSpan = areaMax - areaMin || 1

  const sx = (year: number) =>
    PAD + ((year - yearMin) / yearSpan) * (width - 2 * PAD)
  const sy = (area: number) =>
    height - PAD - ((area - areaMin) / areaSpan) * (height - 2 * PAD)

  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">`,
    `<text x="${PAD}" y="16" class="title">${model.name}</text>`,
  ]
  if (model.points.length > 1) {
    const path = model.points
      .map(p => `${sx(p.year).toFixed(1)},${sy(p.area).toFixed(1)}`)
      .join(' ')
    parts.push(`<polyline fill="none" stroke="#1f77b4" stroke-width="2" points="${path}"/>`)
  }
  for (const p of model.points) {
    parts.push(
      `<circle cx="${sx(p.year).toFixed(1)}" cy="${sy(p.area).toFixed(1)}" r="4" fill="#1f77b4"/>`,
      `<text x="${sx(p.year).toFixed(1)}" y="${height - PAD + 16}" ` +
      `text-anchor="middle" class="axis">${p.year}</text>`,
      `<text x="${sx(p.year).toFixed(1)}" y="${(sy(p.area) - 10).toFixed(1)}" ` +
      `text-anchor="middle" class="value">${p.area.toFixed(4)}</text>`)
  }
  for (const d of model.deltas) {
    const midX = (sx(d.fromYear) + sx(d.toYear)) / 2
    const fromY = sy(model.points.find(p => p.year === d.fromYear)!.area)
    const toY = sy(model.points.find(p => p.year === d.toYear)!.area)
    const midY = (fromY + toY) / 2
    parts.push(
      `<text x="${midX.toFixed(1)}" y="${(midY - 6).toFixed(1)}" ` +
      `text-anchor="middle" class="delta">${d.label}</text>`)
  }
  parts.push('</svg>')
  return parts.join('')
}

import { describe, expect, it } from 'vitest'
import { formatDelta, renderTimelineSvg, timelineModel } from '../src/timeline.js'

const PELAGATOS = {
  name: 'Pelagatos',
  points: [[2008, 1.7739], [2009, 1.9953], [2011, 1.7667]] as [number, number][],
  areas: [1.7739, 1.9953, 1.7667],
  deltas: [0.2214, -0.2286],
}

describe('timeline model', () => {
  it('pairs deltas with their year spans', () => {
    const model = timelineModel(PELAGATOS)
    expect(model.points).toHaveLength(3)
    expect(model.deltas).toEqual([
      { fromYear: 2008, toYear: 2009, delta: 0.2214, label: '+0.2214 km²' },
      { fromYear: 2009, toYear: 2011, delta: -0.2286, label: '-0.2286 km²' },
    ])
  })

  it('formats deltas with explicit sign', () => {
    expect(formatDelta(0.2223)).toBe('+0.2223 km²')
    expect(formatDelta(-0.2007)).toBe('-0.2007 km²')
    expect(formatDelta(0)).toBe('+0.0000 km²')
  })

  it('handles a single point with no deltas', () => {
    const model = timelineModel({ name: 'X', points: [[2009, 1.0]], areas: [1.0], deltas: [] })
    expect(model.points).toHaveLength(1)
    expect(model.deltas).toHaveLength(0)
  })
})

describe('timeline svg', () => {
  it('draws one circle per point and one label per delta', () => {
    const svg = renderTimelineSvg(timelineModel(PELAGATOS))
    expect(svg.match(/<circle/g)).toHaveLength(3)
    expect(svg.match(/class="delta"/g)).toHaveLength(2)
    expect(svg).toContain('+0.2214 km²')
    expect(svg).toContain('-0.2286 km²')
    expect(svg).toContain('2008')
    expect(svg).toContain('2011')
    expect(svg).toContain('<polyline')
  })

  it('renders an empty state for no records', () => {
    const svg = renderTimelineSvg({ name: 'X', points: [], deltas: [] })
    expect(svg).toContain('no records')
    expect(svg).not.toContain('<circle')
  })

  it('single point renders without a polyline', () => {
    const svg = renderTimelineSvg(timelineModel(
      { name: 'X', points: [[2009, 1.0]], areas: [1.0], deltas: [] }))
    expect(svg.match(/<circle/g)).toHaveLength(1)
    expect(svg).not.toContain('<polyline')
  })
})

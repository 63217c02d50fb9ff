import { ApiClient } from './api.js'
import { App } from './app.js'

function element<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id)
  if (!found) throw new Error(`missing #${id}`)
  return found as T
}

// same-origin when served from the service's /ui mount; override with
// ?api=http://host:port for a separately hosted dev server
const params = new URLSearchParams(window.location.search)
const client = new ApiClient(params.get('api') ?? '')

const app = new App(client, element<HTMLCanvasElement>('viewer'), {
  sceneSelect: element<HTMLSelectElement>('scene-select'),
  kindSelect: element<HTMLSelectElement>('kind-select'),
  measurements: element('measurements'),
  toast: element('toast'),
  nameInput: element<HTMLInputElement>('lake-name'),
  cuencaInput: element<HTMLInputElement>('lake-cuenca'),
  registerButton: element<HTMLButtonElement>('register'),
  timelineInput: element<HTMLInputElement>('timeline-name'),
  timelineButton: element<HTMLButtonElement>('timeline-show'),
  timelineChart: element('timeline-chart'),
})

app.start().catch(error => {
  element('toast').textContent = `failed to start: ${error}`
  element('toast').className = 'toast err'
})

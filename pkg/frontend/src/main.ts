// Browser entry point: builds the screen regions, wires the keyboard
// pipeline and mouse redundancies to the controller, and keeps the track
// canvas in sync with the media clock on every animation frame.

import { ApiClient } from "./api.js";
import { chordFromStroke, ShiftSideTracker } from "./chords.js";
import { VideoElementClock } from "./clock.js";
import { AnnotationController } from "./controller.js";
import { computeLayout } from "./layout.js";
import { labelListEntries, LANE_GAP, LANE_HEIGHT, TRACK_HEADER_H } from "./render.js";
import { formatTimecode } from "./timecode.js";
import { filmstripSlots } from "./zoom.js";

const api = new ApiClient("");

async function boot(): Promise<void> {
  const root = document.getElementById("app")!;
  const projects = await api.listProjects();
  if (projects.length === 0) {
    root.textContent = "No projects on the server yet. Create one via POST /api/projects.";
    return;
  }
  const project = projects[0];
  const datasetId = project.dataset_refs[0];
  const [dataset, config] = await Promise.all([
    api.getDataset(project.id, datasetId),
    api.getConfig(),
  ]);

  const video = document.createElement("video");
  const primary = project.sources.find((s) => s.id === project.primary_source_id)!;
  video.src = api.mediaUrl(primary.id);
  video.preload = "auto";

  const clock = new VideoElementClock(video, primary.duration);
  const toast = makeToast(root);
  const controller = new AnnotationController(api, project, datasetId, dataset, config, clock, {
    onDatasetChanged: () => render(),
    onToast: toast,
    onSearchFocus: () => searchBox.focus(),
    onSourceChanged: (source) => {
      const keep = video.currentTime;
      video.src = api.mediaUrl(source.id);
      video.currentTime = keep;
    },
  });

  // --- static structure -------------------------------------------------

  const regions = {
    toolbar: el("div", "toolbar"),
    labelList: el("div", "label-list"),
    video: el("div", "video-pane"),
    cameraSelector: el("div", "camera-selector"),
    globalTimeline: el("div", "global-timeline"),
    timelineGutter: el("div", "timeline-gutter"),
    localTimeline: el("div", "local-timeline"),
    tracks: el("div", "tracks"),
  };
  for (const region of Object.values(regions)) root.appendChild(region);

  regions.toolbar.innerHTML = `<span class="brand">feva</span>
    <span class="project-name">${project.name}</span>`;
  const searchBox = document.createElement("input");
  searchBox.placeholder = "search labels (ctrl+f)";
  searchBox.className = "search";
  regions.toolbar.appendChild(searchBox);
  searchBox.addEventListener("input", () => renderLabelList());

  regions.video.appendChild(video);
  const overlay = el("div", "video-overlay");
  regions.video.appendChild(overlay);
  const playButton = el("button", "play-button");
  playButton.textContent = "play/pause";
  overlay.appendChild(playButton);
  const timeReadout = el("span", "time-readout");
  overlay.appendChild(timeReadout);
  playButton.addEventListener("click", () => controller.applyAction("play_pause"));

  for (const source of project.sources) {
    const button = el("button", "camera");
    button.textContent = source.id;
    button.addEventListener("click", () => controller.switchCamera(source.id));
    regions.cameraSelector.appendChild(button);
  }

  // --- keyboard pipeline ---------------------------------------------------

  const shiftSides = new ShiftSideTracker();
  document.addEventListener("keydown", (ev) => {
    shiftSides.keydown(ev);
    if (ev.target === searchBox && ev.key !== "Escape") return;
    const chord = chordFromStroke(ev, shiftSides);
    if (chord === null) return;
    controller.pressChord(chord);
    ev.preventDefault();
  });
  document.addEventListener("keyup", (ev) => shiftSides.keyup(ev));

  // --- mouse redundancies -------------------------------------------------

  regions.globalTimeline.addEventListener("click", (ev) => {
    const fraction = ev.offsetX / regions.globalTimeline.clientWidth;
    controller.seek(Math.round(fraction * controller.duration));
  });
  regions.localTimeline.addEventListener("dblclick", (ev) => {
    const fraction = ev.offsetX / regions.localTimeline.clientWidth;
    const w = controller.window;
    controller.seek(w.start + Math.round(fraction * (w.end - w.start)));
  });
  regions.localTimeline.addEventListener("wheel", (ev) => {
    ev.preventDefault();
    if (ev.ctrlKey) controller.zoom(ev.deltaY > 0 ? 1.25 : 0.8);
    else controller.applyAction(ev.deltaY > 0 ? "step_fwd" : "step_back");
  });

  // --- rendering --------------------------------------------------------------

  function applyLayout(): void {
    const layout = computeLayout(root.clientWidth, root.clientHeight);
    for (const [name, region] of Object.entries(regions)) {
      const rect = layout[name as keyof typeof layout];
      Object.assign(region.style, {
        left: `${rect.x}px`,
        top: `${rect.y}px`,
        width: `${rect.w}px`,
        height: `${rect.h}px`,
      });
    }
  }

  function renderTracks(): void {
    regions.tracks.textContent = "";
    for (const band of controller.bands()) {
      const bandBox = el("div", "track-band");
      bandBox.style.height = `${band.heightPx}px`;
      const header = el("div", "track-name");
      header.textContent = band.name;
      bandBox.appendChild(header);
      for (const rect of band.rects) {
        const node = el("div", rect.point ? "label point" : "label");
        if (rect.selected) node.classList.add("selected");
        node.style.left = `${(rect.x0 * 100).toFixed(3)}%`;
        node.style.width = `${Math.max((rect.x1 - rect.x0) * 100, 0.1).toFixed(3)}%`;
        node.style.top = `${TRACK_HEADER_H + rect.lane * (LANE_HEIGHT + LANE_GAP)}px`;
        node.style.background = rect.color;
        node.textContent = rect.text;
        node.dataset.labelId = rect.labelId;
        node.addEventListener("click", () => controller.select(rect.labelId));
        bandBox.appendChild(node);
      }
      regions.tracks.appendChild(bandBox);
    }
  }

  function renderLabelList(): void {
    regions.labelList.textContent = "";
    for (const entry of labelListEntries(controller.dataset, searchBox.value)) {
      const row = el("div", "label-row");
      row.textContent = `${formatTimecode(entry.start, controller.fps)}  ${entry.text}`;
      row.addEventListener("dblclick", () => controller.jumpToLabel(entry.id));
      regions.labelList.appendChild(row);
    }
  }

  function renderTimelines(): void {
    const playhead = controller.clock.timeUs();
    const w = controller.window;
    regions.globalTimeline.style.setProperty(
      "--progress",
      `${((playhead / controller.duration) * 100).toFixed(3)}%`,
    );
    regions.globalTimeline.style.setProperty(
      "--win-left",
      `${((w.start / controller.duration) * 100).toFixed(3)}%`,
    );
    regions.globalTimeline.style.setProperty(
      "--win-width",
      `${(((w.end - w.start) / controller.duration) * 100).toFixed(3)}%`,
    );
    regions.localTimeline.textContent = "";
    const span = w.end - w.start;
    for (const offset of filmstripSlots(span, regions.localTimeline.clientWidth)) {
      const img = document.createElement("img");
      img.className = "filmstrip-thumb";
      img.src = api.thumbUrl(controller.currentSource.id, w.start + offset, 96);
      img.onerror = () => img.classList.add("thumb-missing"); // no extractor configured
      regions.localTimeline.appendChild(img);
    }
    const cursor = el("div", "playhead");
    cursor.style.left = `${(((playhead - w.start) / span) * 100).toFixed(3)}%`;
    regions.localTimeline.appendChild(cursor);
  }

  function render(): void {
    renderTracks();
    renderLabelList();
  }

  function frame(): void {
    timeReadout.textContent = formatTimecode(controller.clock.timeUs(), controller.fps);
    renderTimelines();
    requestAnimationFrame(frame);
  }

  window.addEventListener("resize", applyLayout);
  applyLayout();
  render();
  frame();
}

function el(tag: string, className: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  return node;
}

function makeToast(root: HTMLElement): (message: string) => void {
  const box = el("div", "toast");
  root.appendChild(box);
  let timer: ReturnType<typeof setTimeout> | null = null;
  return (message: string) => {
    box.textContent = message;
    box.classList.add("visible");
    if (timer) clearTimeout(timer);
    timer = setTimeout(() => box.classList.remove("visible"), 4000);
  };
}

boot().catch((error) => {
  document.getElementById("app")!.textContent = `failed to start: ${error}`;
});

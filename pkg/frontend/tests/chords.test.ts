// @vitest-environment jsdom
// Keyboard capture: real KeyboardEvent shapes -> canonical chords, with the
// left/right shift distinction the fine-tune bindings rely on.

import { describe, expect, it } from "vitest";
import { chordFromStroke, KeymapClient, normalizeChord, ShiftSideTracker } from "../src/chords.js";

describe("chordFromStroke", () => {
  it("maps plain keys and named keys", () => {
    expect(chordFromStroke({ key: "a", ctrlKey: false, altKey: false, metaKey: false, shiftKey: false })).toBe("a");
    expect(chordFromStroke({ key: " ", ctrlKey: false, altKey: false, metaKey: false, shiftKey: false })).toBe("space");
    expect(chordFromStroke({ key: "ArrowLeft", ctrlKey: false, altKey: false, metaKey: false, shiftKey: false })).toBe("left");
  });

  it("orders modifiers canonically", () => {
    expect(chordFromStroke({ key: "Z", ctrlKey: true, altKey: false, metaKey: false, shiftKey: false })).toBe("ctrl+z");
    expect(chordFromStroke({ key: "ArrowRight", ctrlKey: true, altKey: true, metaKey: false, shiftKey: false })).toBe("ctrl+alt+right");
  });

  it("ignores bare modifier presses", () => {
    expect(chordFromStroke({ key: "Shift", ctrlKey: false, altKey: false, metaKey: false, shiftKey: true })).toBeNull();
  });

  it("resolves shift side from tracked keydown locations", () => {
    const sides = new ShiftSideTracker();
    sides.keydown(new KeyboardEvent("keydown", { key: "Shift", location: 1 }));
    const left = chordFromStroke(
      { key: "ArrowLeft", ctrlKey: false, altKey: false, metaKey: false, shiftKey: true },
      sides,
    );
    expect(left).toBe("lshift+left");
    sides.keyup(new KeyboardEvent("keyup", { key: "Shift", location: 1 }));
    sides.keydown(new KeyboardEvent("keydown", { key: "Shift", location: 2 }));
    const right = chordFromStroke(
      { key: "ArrowRight", ctrlKey: false, altKey: false, metaKey: false, shiftKey: true },
      sides,
    );
    expect(right).toBe("rshift+right");
  });

  it("falls back to generic shift when no side is known", () => {
    expect(chordFromStroke({ key: "Tab", ctrlKey: false, altKey: false, metaKey: false, shiftKey: true })).toBe("shift+tab");
  });
});

describe("KeymapClient", () => {
  const km = new KeymapClient({ space: "play_pause", a: "mark", "ctrl+z": "undo", "lshift+left": "fine_tune_start_back" });

  it("resolves bound chords and returns null otherwise", () => {
    expect(km.resolve("space")).toBe("play_pause");
    expect(km.resolve("a")).toBe("mark");
    expect(km.resolve("q")).toBeNull();
  });

  it("normalizes lookups", () => {
    expect(normalizeChord("Shift + Ctrl + A")).toBe("ctrl+shift+a");
    expect(km.resolve("CTRL+Z")).toBe("undo");
  });
});

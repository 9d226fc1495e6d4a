// Keyboard capture: DOM events -> canonical chord strings -> actions.
//
// Chords use the engine's canonical form: lowercase, modifiers ordered
// ctrl, alt, meta, shift, lshift, rshift, then the key ("ctrl+z",
// "lshift+left"). Browsers do not say which shift is held on an arrow-key
// event, so the tracker watches Shift keydown/keyup locations and carries
// that state into the next chord; that is what lets the left and right
// shift keys target different label edges.

const MODIFIER_ORDER = ["ctrl", "alt", "meta", "shift", "lshift", "rshift"] as const;

const KEY_NAMES: Record<string, string> = {
  " ": "space",
  spacebar: "space",
  arrowleft: "left",
  arrowright: "right",
  arrowup: "up",
  arrowdown: "down",
  esc: "escape",
  del: "delete",
  "-": "minus",
  "+": "plus",
  ",": "comma",
  ".": "period",
  "/": "slash",
  "\\": "backslash",
};

export interface KeyStroke {
  key: string;
  ctrlKey: boolean;
  altKey: boolean;
  metaKey: boolean;
  shiftKey: boolean;
}

export class ShiftSideTracker {
  left = false;
  right = false;

  keydown(ev: { key: string; location?: number }): void {
    if (ev.key !== "Shift") return;
    if (ev.location === 1) this.left = true;
    else if (ev.location === 2) this.right = true;
    else this.left = true; // unknown side: treat as left
  }

  keyup(ev: { key: string; location?: number }): void {
    if (ev.key !== "Shift") return;
    if (ev.location === 1) this.left = false;
    else if (ev.location === 2) this.right = false;
    else {
      this.left = false;
      this.right = false;
    }
  }
}

export function chordFromStroke(ev: KeyStroke, shift?: ShiftSideTracker): string | null {
  const raw = ev.key.toLowerCase();
  if (["shift", "control", "alt", "meta"].includes(raw)) return null; // bare modifier
  const key = KEY_NAMES[raw] ?? raw;
  const mods: string[] = [];
  if (ev.ctrlKey) mods.push("ctrl");
  if (ev.altKey) mods.push("alt");
  if (ev.metaKey) mods.push("meta");
  if (ev.shiftKey) {
    if (shift && (shift.left || shift.right)) {
      if (shift.left) mods.push("lshift");
      if (shift.right) mods.push("rshift");
    } else {
      mods.push("shift");
    }
  }
  const ordered = MODIFIER_ORDER.filter((m) => mods.includes(m));
  return [...ordered, key].join("+");
}

export class KeymapClient {
  private bindings: Map<string, string>;

  constructor(keymap: Record<string, string>) {
    this.bindings = new Map(Object.entries(keymap).map(([c, a]) => [normalizeChord(c), a]));
  }

  resolve(chord: string): string | null {
    return this.bindings.get(normalizeChord(chord)) ?? null;
  }
}

export function normalizeChord(raw: string): string {
  const parts = raw
    .split("+")
    .map((p) => p.trim().toLowerCase())
    .filter((p) => p.length > 0);
  if (parts.length === 0) return raw.toLowerCase();
  const key = parts[parts.length - 1];
  const mods = parts.slice(0, -1);
  const ordered = MODIFIER_ORDER.filter((m) => mods.includes(m));
  return [...ordered, key].join("+");
}

/** View state and its pure transitions. Rendering consumes this, events produce it. */

import type { Session, SuggestRequest } from "./types.js";

export interface ViewState {
  /** Text shown in the code pane; refreshed from apply's new_text. */
  sourceText: string | null;
  session: Session | null;
  /** Inputs that produced the session; replayed by the stale banner's re-suggest. */
  lastRequest: SuggestRequest | null;
  selectedIndex: number | null;
  /** Inclusive line range to highlight; always copied from the session JSON. */
  highlight: [number, number] | null;
  /** Unified diff exactly as the server sent it. */
  appliedDiff: string | null;
  /** true after a 409: the file moved under the session. */
  stale: boolean;
  /** Server error text (verbatim) or connection guidance. */
  error: string | null;
  busy: boolean;
}

export function initialState(): ViewState {
  return {
    sourceText: null,
    session: null,
    lastRequest: null,
    selectedIndex: null,
    highlight: null,
    appliedDiff: null,
    stale: false,
    error: null,
    busy: false,
  };
}

export function withSession(
  state: ViewState,
  session: Session,
  sourceText: string,
  lastRequest: SuggestRequest,
): ViewState {
  return {
    ...state,
    session,
    sourceText,
    lastRequest,
    selectedIndex: null,
    highlight: null,
    appliedDiff: null,
    stale: false,
    error: null,
  };
}

/**
 * Select a suggestion row. The highlight is the group's normalized range,
 * taken from the session as-is; the client never recomputes fragment extents.
 */
export function withSelection(state: ViewState, index: number): ViewState {
  const group = state.session?.groups[index];
  if (!group) return state;
  return { ...state, selectedIndex: index, highlight: [group.range[0], group.range[1]] };
}

export function withApplied(state: ViewState, diff: string, newText: string): ViewState {
  return {
    ...state,
    appliedDiff: diff,
    sourceText: newText,
    highlight: null,
    stale: false,
    error: null,
  };
}

export function withStale(state: ViewState, message: string): ViewState {
  return { ...state, stale: true, error: message };
}

export function withError(state: ViewState, message: string): ViewState {
  return { ...state, stale: false, error: message };
}

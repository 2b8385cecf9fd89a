/** Shapes mirrored from API.md. The UI never recomputes any of these. */

export interface MethodInfo {
  name: string;
  decl_line: number;
  close_line: number;
}

export interface Group {
  index: number;
  name: string;
  /** Normalized line range, inclusive. The single source of truth for highlighting. */
  range: [number, number];
  frequency: number;
  names: string[];
  fragment_lines: number[];
  signature: string | null;
}

export interface Session {
  session: string;
  path: string;
  digest: string;
  created: string;
  method: MethodInfo;
  groups: Group[];
  diagnostics: string[];
}

export interface ApplyResponse {
  diff: string;
  new_text: string;
}

/** One suggest request's inputs, kept so the stale banner can re-suggest. */
export interface SuggestRequest {
  path: string;
  method_locator: string | number;
}

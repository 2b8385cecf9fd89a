/** Pure DOM builders: ViewState in, elements out. No fetch, no globals, no analysis. */

import type { ViewState } from "./state.js";
import type { Group, Session } from "./types.js";

export interface Handlers {
  onSuggest(path: string, locator: string): void;
  onSelect(index: number): void;
  onPreview(index: number): void;
  onApply(): void;
  onResuggest(): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderForm(state: ViewState, handlers: Handlers): HTMLElement {
  const form = el("form", "lookup");
  const path = el("input");
  path.name = "path";
  path.placeholder = "path/to/File.java";
  path.value = state.lastRequest?.path ?? "";
  const locator = el("input");
  locator.name = "locator";
  locator.placeholder = "method name or line";
  locator.value = state.lastRequest ? String(state.lastRequest.method_locator) : "";
  const go = el("button", "", "suggest");
  go.type = "submit";
  go.disabled = state.busy;
  form.append(path, locator, go);
  form.addEventListener("submit", (ev) => {
    ev.preventDefault();
    if (path.value && locator.value) handlers.onSuggest(path.value, locator.value);
  });
  return form;
}

function renderBanner(state: ViewState, handlers: Handlers): HTMLElement | null {
  if (state.stale) {
    const banner = el("div", "banner stale");
    banner.append(el("span", "message", state.error ?? "file changed; re-run suggest"));
    const again = el("button", "", "re-suggest");
    again.addEventListener("click", () => handlers.onResuggest());
    banner.append(again);
    return banner;
  }
  if (state.error !== null) {
    return el("div", "banner error", state.error);
  }
  return null;
}

function sizeLabel(group: Group): string {
  const span = group.range[1] - group.range[0] + 1;
  return span === 1 ? "1 line" : `${span} lines`;
}

export function renderSuggestions(session: Session, selected: number | null, handlers: Handlers): HTMLElement {
  const pane = el("section", "suggestions");
  pane.append(el("h2", "", `${session.method.name} — suggested extractions`));
  if (session.groups.length === 0) {
    pane.append(el("p", "empty", "no suggestions"));
    return pane;
  }
  const list = el("ul");
  for (const group of session.groups) {
    const row = el("li", group.index === selected ? "row selected" : "row");
    row.dataset.index = String(group.index);
    const head = el("div", "row-head");
    head.append(
      el("span", "name", group.name),
      el("span", "size", sizeLabel(group)),
      el("span", "freq", `×${group.frequency}`),
    );
    row.append(head);
    row.append(el("code", "signature", group.signature ?? "(plan unavailable)"));
    row.addEventListener("click", () => handlers.onSelect(group.index));
    row.addEventListener("mouseenter", () => handlers.onPreview(group.index));
    list.append(row);
  }
  pane.append(list);
  return pane;
}

export function renderCode(sourceText: string, highlight: [number, number] | null): HTMLElement {
  const pane = el("section", "code");
  const pre = el("pre");
  const lines = sourceText.split("\n");
  for (let i = 0; i < lines.length; i++) {
    const lineNo = i + 1;
    const lit = highlight !== null && lineNo >= highlight[0] && lineNo <= highlight[1];
    const row = el("div", lit ? "line hl" : "line");
    row.dataset.line = String(lineNo);
    row.append(el("span", "ln", String(lineNo)), el("span", "src", lines[i]));
    pre.append(row);
  }
  pane.append(pre);
  return pane;
}

function renderDiff(diff: string): HTMLElement {
  const pane = el("section", "result");
  pane.append(el("h2", "", "applied"));
  const body = el("pre", "diff");
  body.textContent = diff;
  pane.append(body);
  return pane;
}

export function renderApp(state: ViewState, handlers: Handlers): HTMLElement {
  const root = el("div", "app");
  const header = el("header");
  header.append(el("h1", "", "carver review"), renderForm(state, handlers));
  root.append(header);

  const banner = renderBanner(state, handlers);
  if (banner) root.append(banner);

  if (state.session && state.sourceText !== null) {
    const main = el("main");
    main.append(renderSuggestions(state.session, state.selectedIndex, handlers));
    main.append(renderCode(state.sourceText, state.highlight));
    root.append(main);

    const applyBar = el("div", "apply-bar");
    const applyBtn = el("button", "apply", "extract");
    applyBtn.disabled = state.selectedIndex === null || state.busy || state.stale;
    applyBtn.addEventListener("click", () => handlers.onApply());
    applyBar.append(applyBtn);
    root.append(applyBar);

    if (state.session.diagnostics.length > 0) {
      const notes = el("ul", "diagnostics");
      for (const note of state.session.diagnostics) notes.append(el("li", "", note));
      root.append(notes);
    }
  }

  if (state.appliedDiff !== null) {
    root.append(renderDiff(state.appliedDiff));
  }
  return root;
}

/** Event wiring: owns the ViewState, talks to the API, re-renders on change. */

import { ApiError, ConnectionError, apply, source, suggest } from "./api.js";
import { renderApp, type Handlers } from "./render.js";
import {
  initialState,
  withApplied,
  withError,
  withSelection,
  withSession,
  withStale,
  type ViewState,
} from "./state.js";

export class App {
  private state: ViewState = initialState();

  constructor(private readonly root: HTMLElement) {}

  start(): void {
    this.render();
  }

  private render(): void {
    this.root.replaceChildren(renderApp(this.state, this.handlers));
  }

  private set(next: ViewState): void {
    this.state = next;
    this.render();
  }

  private fail(err: unknown): void {
    if (err instanceof ApiError && err.status === 409) {
      this.set(withStale({ ...this.state, busy: false }, err.message));
    } else if (err instanceof ApiError) {
      this.set(withError({ ...this.state, busy: false }, err.message));
    } else if (err instanceof ConnectionError) {
      this.set(withError({ ...this.state, busy: false }, `${err.message}; is \`carver serve\` running?`));
    } else {
      this.set(withError({ ...this.state, busy: false }, String(err)));
    }
  }

  private async loadSession(path: string, locator: string | number): Promise<void> {
    this.set({ ...this.state, busy: true });
    try {
      const request = { path, method_locator: locator };
      const session = await suggest(request);
      const text = await source(session.path);
      this.set(withSession({ ...this.state, busy: false }, session, text, request));
    } catch (err) {
      this.fail(err);
    }
  }

  private async applySelected(): Promise<void> {
    const { session, selectedIndex } = this.state;
    if (!session || selectedIndex === null) return;
    this.set({ ...this.state, busy: true });
    try {
      const result = await apply(session.session, selectedIndex);
      this.set(withApplied({ ...this.state, busy: false }, result.diff, result.new_text));
    } catch (err) {
      this.fail(err);
    }
  }

  private readonly handlers: Handlers = {
    onSuggest: (path, locator) => {
      // numeric input means "line inside the method", anything else a name
      const asLine = /^\d+$/.test(locator) ? Number(locator) : locator;
      void this.loadSession(path, asLine);
    },
    onSelect: (index) => this.set(withSelection(this.state, index)),
    onPreview: (index) => {
      const group = this.state.session?.groups[index];
      if (group && this.state.selectedIndex === null) {
        this.set({ ...this.state, highlight: [group.range[0], group.range[1]] });
      }
    },
    onApply: () => void this.applySelected(),
    onResuggest: () => {
      const last = this.state.lastRequest;
      if (last) void this.loadSession(last.path, last.method_locator);
    },
  };
}

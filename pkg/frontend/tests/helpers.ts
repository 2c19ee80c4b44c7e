import { vi } from "vitest";

type RouteValue = unknown | ((url: URL) => unknown);

export interface FakeResponse {
    ok: boolean;
    status: number;
    json(): Promise<unknown>;
}

function respond(body: unknown, status = 200): FakeResponse {
    return {
        ok: status >= 200 && status < 300,
        status,
        json: async () => body,
    };
}

/** Install a fetch mock routed by pathname; returns the list of requested URLs. */
export function mockFetch(routes: Record<string, RouteValue>): URL[] {
    const calls: URL[] = [];
    vi.stubGlobal(
        "fetch",
        vi.fn(async (input: string) => {
            const url = new URL(String(input), "http://localhost");
            calls.push(url);
            if (url.pathname in routes) {
                const handler = routes[url.pathname];
                const body = typeof handler === "function" ? (handler as (u: URL) => unknown)(url) : handler;
                return respond(body);
            }
            return respond({ error: { code: "not_found", message: `no route ${url.pathname}` } }, 404);
        }),
    );
    return calls;
}

export function mount(): HTMLElement {
    document.body.innerHTML = '<div id="app"></div>';
    return document.getElementById("app") as HTMLElement;
}

export const tick = (ms = 0) => new Promise((resolve) => setTimeout(resolve, ms));

export function queryCalls(calls: URL[], path: string): URL[] {
    return calls.filter((url) => url.pathname === path);
}

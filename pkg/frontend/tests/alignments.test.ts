import { afterEach, describe, expect, it, vi } from "vitest";

import { AlignmentsPage } from "../src/alignments.js";
import { AlignmentsResponse, ApiClient } from "../src/api.js";
import { KBS, RAW_ALIGNMENTS } from "./fixtures.js";
import { mockFetch, mount, queryCalls, tick } from "./helpers.js";

afterEach(() => {
    vi.unstubAllGlobals();
    document.body.innerHTML = "";
});

function withManualRow(): AlignmentsResponse {
    const base: AlignmentsResponse = JSON.parse(JSON.stringify(RAW_ALIGNMENTS));
    base.rows.unshift({
        counting_iri: "http://dbpedia.org/ontology/staffSize",
        counting_inverse: false,
        enumerating_iri: "http://dbpedia.org/ontology/workInstitution",
        enumerating_inverse: true,
        counting_label: "staffSize",
        enumerating_label: "workInstitution⁻¹",
        score: 0.95,
        lexical: null,
        statistical: null,
        support: null,
        provenance: "MANUAL",
        sparql_cooccurrence: "SELECT DISTINCT ?x WHERE { ?x <a> ?c . ?e <b> ?x }",
    });
    base.total += 1;
    return base;
}

async function browserPage(response: AlignmentsResponse = RAW_ALIGNMENTS) {
    const calls = mockFetch({ "/api/kbs": KBS, "/api/alignments": response });
    const root = mount();
    const page = new AlignmentsPage(root, new ApiClient(""));
    await page.init();
    await tick();
    return { calls, root, page };
}

describe("alignment browser", () => {
    it("renders the table in the served (score-descending) order", async () => {
        const { root } = await browserPage();
        const scores = [...root.querySelectorAll("tbody td:nth-child(3)")].map((td) =>
            Number(td.textContent),
        );
        expect(scores.length).toBe(RAW_ALIGNMENTS.rows.length);
        expect(scores).toEqual([...scores].sort((a, b) => b - a));
    });

    it("marks manual rows and renders empty components as dashes", async () => {
        const { root } = await browserPage(withManualRow());
        const manual = root.querySelector("tr.manual")!;
        expect(manual.querySelector(".manual-badge")!.textContent).toBe("MANUAL");
        const cells = [...manual.querySelectorAll("td")].map((td) => td.textContent);
        expect(cells[2]).toBe("0.9500");
        expect(cells[3]).toBe("–"); // lexical empty for manual rows
        // the manual row ranks above every automatic row
        const firstRow = root.querySelector("tbody tr")!;
        expect(firstRow.classList.contains("manual")).toBe(true);
    });

    it("search input filters through the API, resetting to page one", async () => {
        const { calls, root } = await browserPage();
        const input = root.querySelector<HTMLInputElement>(".search-input")!;
        input.value = "child";
        input.dispatchEvent(new Event("input"));
        await tick(230);
        const requests = queryCalls(calls, "/api/alignments");
        const last = requests[requests.length - 1];
        expect(last.searchParams.get("search")).toBe("child");
        expect(last.searchParams.get("offset")).toBe("0");
    });

    it("pages through long tables 50 rows at a time", async () => {
        const big: AlignmentsResponse = { total: 120, rows: RAW_ALIGNMENTS.rows };
        const { calls, root } = await browserPage(big);
        const next = root.querySelector<HTMLButtonElement>(".next")!;
        expect(next.hasAttribute("disabled")).toBe(false);
        next.click();
        await tick();
        const requests = queryCalls(calls, "/api/alignments");
        const last = requests[requests.length - 1];
        expect(last.searchParams.get("offset")).toBe("50");
        expect(last.searchParams.get("limit")).toBe("50");
        expect(root.querySelector(".page-label")!.textContent).toContain("page 2 of 3");
        expect(root.querySelector<HTMLButtonElement>(".prev")!.hasAttribute("disabled")).toBe(false);
    });

    it("every row links to its co-occurrence SPARQL", async () => {
        const { root } = await browserPage();
        const sparqlCells = [...root.querySelectorAll("tbody details.sparql pre")];
        expect(sparqlCells.length).toBe(RAW_ALIGNMENTS.rows.length);
        for (const cell of sparqlCells) {
            expect(cell.textContent).toContain("SELECT DISTINCT ?x WHERE");
        }
    });

    it("deep link selects KB and search", async () => {
        const calls = mockFetch({ "/api/kbs": KBS, "/api/alignments": RAW_ALIGNMENTS });
        const root = mount();
        const page = new AlignmentsPage(root, new ApiClient(""), {
            kb: "dbpedia_raw",
            search: "gold",
        });
        await page.init();
        const requests = queryCalls(calls, "/api/alignments");
        expect(requests[0].searchParams.get("kb")).toBe("dbpedia_raw");
        expect(requests[0].searchParams.get("search")).toBe("gold");
        expect(root.querySelector<HTMLInputElement>(".search-input")!.value).toBe("gold");
    });
});

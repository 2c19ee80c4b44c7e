/** The alignment browser: the KB's ranked table with search, pagination, and
 * a co-occurrence SPARQL link per row. Manual rows are visually marked. */
import { AlignmentRow, ApiClient, KB } from "./api.js";
import { debounce } from "./debounce.js";
import { clear, el } from "./dom.js";

export const PAGE_SIZE = 50;

export interface AlignmentsDeepLink {
    kb?: string;
    search?: string;
}

export class AlignmentsPage {
    private kbs: KB[] = [];
    private kb: KB | null = null;
    private search = "";
    private page = 0;
    private total = 0;

    private readonly kbSelect = el("select", { class: "kb-select" });
    private readonly searchInput = el("input", {
        class: "search-input",
        placeholder: "Filter set predicates",
    });
    private readonly banner = el("div", { class: "banner", hidden: "" });
    private readonly tableWrap = el("div", { class: "table-wrap" });
    private readonly pageLabel = el("span", { class: "page-label" });
    private readonly prevButton = el("button", { class: "prev", type: "button", disabled: "" }, "Prev");
    private readonly nextButton = el("button", { class: "next", type: "button", disabled: "" }, "Next");

    constructor(
        private readonly root: HTMLElement,
        private readonly api: ApiClient,
        private readonly deepLink: AlignmentsDeepLink = {},
    ) {}

    async init(): Promise<void> {
        this.render();
        try {
            this.kbs = await this.api.kbs();
        } catch (err) {
            this.showError(String(err));
            return;
        }
        clear(this.kbSelect);
        for (const kb of this.kbs) {
            this.kbSelect.append(el("option", { value: kb.id }, kb.name));
        }
        const wanted = this.deepLink.kb && this.kbs.find((kb) => kb.id === this.deepLink.kb);
        this.kb = wanted || this.kbs[0] || null;
        if (this.kb) {
            this.kbSelect.value = this.kb.id;
        }
        if (this.deepLink.search) {
            this.search = this.deepLink.search;
            this.searchInput.value = this.search;
        }
        await this.load();
    }

    private render(): void {
        const onSearch = debounce(() => {
            this.search = this.searchInput.value.trim();
            this.page = 0;
            void this.load();
        }, 200);
        this.searchInput.addEventListener("input", onSearch);
        this.kbSelect.addEventListener("change", () => {
            this.kb = this.kbs.find((kb) => kb.id === this.kbSelect.value) ?? null;
            this.page = 0;
            void this.load();
        });
        this.prevButton.addEventListener("click", () => {
            if (this.page > 0) {
                this.page -= 1;
                void this.load();
            }
        });
        this.nextButton.addEventListener("click", () => {
            if ((this.page + 1) * PAGE_SIZE < this.total) {
                this.page += 1;
                void this.load();
            }
        });
        this.root.append(
            el(
                "div",
                { class: "alignments-toolbar" },
                el("label", {}, "KB ", this.kbSelect),
                this.searchInput,
            ),
            this.banner,
            this.tableWrap,
            el("div", { class: "pager" }, this.prevButton, this.pageLabel, this.nextButton),
        );
    }

    async load(): Promise<void> {
        if (!this.kb) return;
        this.banner.setAttribute("hidden", "");
        let response;
        try {
            response = await this.api.alignments(this.kb.id, this.search, this.page * PAGE_SIZE, PAGE_SIZE);
        } catch (err) {
            this.showError(String(err));
            return;
        }
        this.total = response.total;
        this.pushUrl();
        clear(this.tableWrap);
        const tbody = el("tbody", {});
        for (const row of response.rows) {
            tbody.append(this.renderRow(row));
        }
        this.tableWrap.append(
            el(
                "table",
                { class: "alignments" },
                el(
                    "thead",
                    {},
                    el(
                        "tr",
                        {},
                        el("th", {}, "Counting"),
                        el("th", {}, "Enumerating"),
                        el("th", {}, "Score"),
                        el("th", {}, "Lexical"),
                        el("th", {}, "Statistical"),
                        el("th", {}, "Support"),
                        el("th", {}, "Source"),
                        el("th", {}, "Subjects"),
                    ),
                ),
                tbody,
            ),
        );
        const pages = Math.max(1, Math.ceil(this.total / PAGE_SIZE));
        this.pageLabel.textContent = `page ${this.page + 1} of ${pages} (${this.total} alignments)`;
        if (this.page > 0) {
            this.prevButton.removeAttribute("disabled");
        } else {
            this.prevButton.setAttribute("disabled", "");
        }
        if ((this.page + 1) * PAGE_SIZE < this.total) {
            this.nextButton.removeAttribute("disabled");
        } else {
            this.nextButton.setAttribute("disabled", "");
        }
    }

    private pushUrl(): void {
        if (typeof history === "undefined" || !this.kb) return;
        const search = new URLSearchParams({ kb: this.kb.id });
        if (this.search) {
            search.set("search", this.search);
        }
        history.replaceState(null, "", `/alignments?${search.toString()}`);
    }

    private renderRow(row: AlignmentRow): HTMLElement {
        const fmt = (value: number | null) => (value === null ? "–" : value.toFixed(4));
        return el(
            "tr",
            { class: row.provenance === "MANUAL" ? "manual" : "automatic" },
            el("td", {}, row.counting_label),
            el("td", {}, row.enumerating_label),
            el("td", {}, row.score.toFixed(4)),
            el("td", {}, fmt(row.lexical)),
            el("td", {}, fmt(row.statistical)),
            el("td", {}, row.support === null ? "–" : String(row.support)),
            el(
                "td",
                {},
                row.provenance === "MANUAL"
                    ? el("span", { class: "manual-badge" }, "MANUAL")
                    : "automatic",
            ),
            el("td", {}, this.renderSparqlLink(row.sparql_cooccurrence)),
        );
    }

    private renderSparqlLink(query: string): HTMLElement {
        const endpoint = this.kb?.endpoint;
        if (endpoint) {
            return el(
                "a",
                {
                    class: "sparql",
                    target: "_blank",
                    rel: "noopener",
                    href: `${endpoint}?query=${encodeURIComponent(query)}`,
                },
                "SPARQL",
            );
        }
        return el("details", { class: "sparql" }, el("summary", {}, "SPARQL"), el("pre", {}, query));
    }

    private showError(message: string): void {
        this.banner.textContent = message;
        this.banner.removeAttribute("hidden");
    }
}

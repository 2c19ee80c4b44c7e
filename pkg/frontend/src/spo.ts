/** The SPO query page: entity autocomplete, tiered predicate picker, and the
 * main + related result rows with hover statistics and expandable
 * enumerations. Every displayed number comes straight from the API. */
import {
    ApiClient,
    EntitySuggestion,
    KB,
    PredicateSuggestion,
    QueryResponse,
    ResultRow,
} from "./api.js";
import { debounce } from "./debounce.js";
import { clear, el } from "./dom.js";

export const SUGGEST_DEBOUNCE_MS = 200;
export const ENUMERATION_CAP = 1000;

export interface SpoDeepLink {
    kb?: string;
    subject?: string;
    predicate?: string;
    inverse?: boolean;
}

interface SelectedPredicate {
    iri: string;
    inverse: boolean;
    label: string;
}

function tierTitle(tier: number): string {
    switch (tier) {
        case 1:
            return "Populated, with alignments";
        case 2:
            return "Populated, no alignments";
        default:
            return "Unpopulated";
    }
}

export function statsText(row: ResultRow): string {
    if (row.stats.mean_value !== undefined) {
        return `avg value ${row.stats.mean_value}`;
    }
    if (row.stats.mean_per_subject !== undefined) {
        return `avg ${row.stats.mean_per_subject} entities per subject`;
    }
    return "no statistics";
}

export class SpoPage {
    private kbs: KB[] = [];
    private kb: KB | null = null;
    private entity: EntitySuggestion | null = null;
    private predicate: SelectedPredicate | null = null;
    private seq = 0; // request sequence number; stale responses are discarded

    private readonly kbSelect = el("select", { class: "kb-select" });
    private readonly entityInput = el("input", {
        class: "entity-input",
        placeholder: "Entity, e.g. Charlie Chaplin",
        autocomplete: "off",
    });
    private readonly suggestBox = el("div", { class: "suggest-box", hidden: "" });
    private readonly predicateSelect = el("select", { class: "predicate-select", disabled: "" });
    private readonly runButton = el("button", { class: "run", disabled: "" }, "Query");
    private readonly banner = el("div", { class: "banner", hidden: "" });
    private readonly results = el("div", { class: "results" });

    constructor(
        private readonly root: HTMLElement,
        private readonly api: ApiClient,
        private readonly deepLink: SpoDeepLink = {},
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
        this.kbSelect.append(el("option", { value: "" }, "Select a KB"));
        for (const kb of this.kbs) {
            this.kbSelect.append(el("option", { value: kb.id }, kb.name));
        }
        const wanted = this.deepLink;
        if (wanted.kb && this.kbs.some((kb) => kb.id === wanted.kb)) {
            this.kbSelect.value = wanted.kb;
            this.kb = this.kbs.find((kb) => kb.id === wanted.kb) ?? null;
            if (wanted.subject) {
                this.entity = { iri: wanted.subject, label: wanted.subject.split(/[/#]/).pop() ?? wanted.subject };
                this.entityInput.value = this.entity.label;
                await this.loadPredicates();
                if (wanted.predicate) {
                    const hit = this.findOption(wanted.predicate, wanted.inverse ?? false);
                    this.predicate = hit ?? {
                        iri: wanted.predicate,
                        inverse: wanted.inverse ?? false,
                        label: wanted.predicate.split(/[/#]/).pop() ?? wanted.predicate,
                    };
                    this.syncPredicateSelect();
                    await this.runQuery();
                }
            }
        }
    }

    private render(): void {
        const onSuggest = debounce((prefix: string) => void this.suggest(prefix), SUGGEST_DEBOUNCE_MS);
        this.entityInput.addEventListener("input", () => {
            const text = this.entityInput.value.trim();
            this.entity = null;
            this.updateRunButton();
            if (this.kb && text) {
                onSuggest(text);
            } else {
                this.hideSuggestions();
            }
        });
        this.kbSelect.addEventListener("change", () => {
            this.kb = this.kbs.find((kb) => kb.id === this.kbSelect.value) ?? null;
            // switching KBs resets both input fields
            this.entity = null;
            this.predicate = null;
            this.entityInput.value = "";
            clear(this.predicateSelect);
            this.predicateSelect.setAttribute("disabled", "");
            this.hideSuggestions();
            this.updateRunButton();
        });
        this.predicateSelect.addEventListener("change", () => {
            const [iri, inverse] = this.splitKey(this.predicateSelect.value);
            this.predicate = this.findOption(iri, inverse);
            this.updateRunButton();
        });
        this.runButton.addEventListener("click", () => void this.runQuery());

        this.root.append(
            el(
                "form",
                { class: "spo-form", submit: (event) => event.preventDefault() },
                el("label", {}, "KB ", this.kbSelect),
                el("span", { class: "entity-wrap" }, this.entityInput, this.suggestBox),
                el("label", {}, "Set predicate ", this.predicateSelect),
                this.runButton,
            ),
            this.banner,
            this.results,
        );
    }

    private suggestions: PredicateSuggestion[] = [];

    private keyOf(iri: string, inverse: boolean): string {
        return `${inverse ? "1" : "0"} ${iri}`;
    }

    private splitKey(key: string): [string, boolean] {
        const inverse = key.startsWith("1 ");
        return [key.slice(2), inverse];
    }

    private findOption(iri: string, inverse: boolean): SelectedPredicate | null {
        const hit = this.suggestions.find((s) => s.iri === iri && s.inverse === inverse);
        return hit ? { iri: hit.iri, inverse: hit.inverse, label: hit.label } : null;
    }

    private async suggest(prefix: string): Promise<void> {
        if (!this.kb) return;
        let hits: EntitySuggestion[];
        try {
            hits = await this.api.suggestEntities(this.kb.id, prefix);
        } catch (err) {
            this.showError(String(err));
            return;
        }
        clear(this.suggestBox);
        for (const hit of hits) {
            this.suggestBox.append(
                el(
                    "button",
                    {
                        class: "suggestion",
                        type: "button",
                        click: () => void this.pickEntity(hit),
                    },
                    hit.label,
                ),
            );
        }
        if (hits.length) {
            this.suggestBox.removeAttribute("hidden");
        } else {
            this.hideSuggestions();
        }
    }

    private hideSuggestions(): void {
        this.suggestBox.setAttribute("hidden", "");
        clear(this.suggestBox);
    }

    private async pickEntity(hit: EntitySuggestion): Promise<void> {
        this.entity = hit;
        this.entityInput.value = hit.label;
        this.hideSuggestions();
        await this.loadPredicates();
    }

    private async loadPredicates(): Promise<void> {
        if (!this.kb || !this.entity) return;
        try {
            this.suggestions = await this.api.suggestPredicates(this.kb.id, this.entity.iri);
        } catch (err) {
            this.showError(String(err));
            return;
        }
        clear(this.predicateSelect);
        this.predicateSelect.append(el("option", { value: "" }, "Select a set predicate"));
        let group: HTMLOptGroupElement | null = null;
        let groupTier = 0;
        for (const s of this.suggestions) {
            if (!group || s.tier !== groupTier) {
                group = el("optgroup", { label: tierTitle(s.tier), "data-tier": String(s.tier) });
                groupTier = s.tier;
                this.predicateSelect.append(group);
            }
            group.append(el("option", { value: this.keyOf(s.iri, s.inverse) }, s.label));
        }
        this.predicateSelect.removeAttribute("disabled");
        this.predicate = null;
        this.updateRunButton();
    }

    private syncPredicateSelect(): void {
        if (this.predicate) {
            this.predicateSelect.value = this.keyOf(this.predicate.iri, this.predicate.inverse);
            this.predicateSelect.removeAttribute("disabled");
        }
        this.updateRunButton();
    }

    private updateRunButton(): void {
        // a query needs kb, entity, and predicate, all three
        if (this.kb && this.entity && this.predicate) {
            this.runButton.removeAttribute("disabled");
        } else {
            this.runButton.setAttribute("disabled", "");
        }
    }

    async runQuery(): Promise<void> {
        if (!this.kb || !this.entity || !this.predicate) return;
        const mySeq = ++this.seq;
        this.banner.setAttribute("hidden", "");
        clear(this.results);
        this.results.append(el("p", { class: "loading" }, "Loading…"));
        let response: QueryResponse;
        try {
            response = await this.api.query(
                this.kb.id,
                this.entity.iri,
                this.predicate.iri,
                this.predicate.inverse,
            );
        } catch (err) {
            if (mySeq !== this.seq) return;
            clear(this.results);
            this.showError(String(err));
            return;
        }
        if (mySeq !== this.seq) return; // a newer query superseded this response
        this.pushUrl();
        clear(this.results);
        this.results.append(this.renderRow(response.main));
        for (const row of response.related) {
            this.results.append(this.renderRow(row));
        }
    }

    private pushUrl(): void {
        if (typeof history === "undefined" || !this.kb || !this.entity || !this.predicate) return;
        const search = new URLSearchParams({
            kb: this.kb.id,
            subject: this.entity.iri,
            predicate: this.predicate.iri,
            inverse: String(this.predicate.inverse),
        });
        history.replaceState(null, "", `/spo?${search.toString()}`);
    }

    private renderRow(row: ResultRow): HTMLElement {
        const roleClass = row.role === "MAIN" ? "main" : "related";
        const container = el("div", { class: `row ${roleClass}${row.error ? " failed" : ""}` });

        const tooltip = el("span", { class: "tooltip", hidden: "" }, statsText(row));
        const predicateButton = el(
            "button",
            {
                class: "predicate",
                type: "button",
                title: statsText(row),
                mouseenter: () => tooltip.removeAttribute("hidden"),
                mouseleave: () => tooltip.setAttribute("hidden", ""),
            },
            row.label,
        );
        if (row.role === "RELATED" && !row.error) {
            // clicking a related predicate fires a new query on the same subject
            predicateButton.addEventListener("click", () => {
                this.predicate = { iri: row.iri, inverse: row.inverse, label: row.label };
                this.syncPredicateSelect();
                void this.runQuery();
            });
        }
        container.append(el("span", { class: "predicate-wrap" }, predicateButton, tooltip));

        if (row.alignment_score !== undefined) {
            container.append(el("span", { class: "score" }, `score ${row.alignment_score.toFixed(4)}`));
        }
        if (row.error) {
            container.append(el("span", { class: "row-error" }, `failed: ${row.error}`));
            return container;
        }

        if (row.variant === "COUNTING") {
            container.append(
                el(
                    "span",
                    { class: "count-value" },
                    row.count_value !== undefined ? String(row.count_value) : "no value",
                ),
            );
        } else {
            container.append(this.renderEnumeration(row));
        }
        container.append(this.renderSparqlLink(row));
        return container;
    }

    private renderEnumeration(row: ResultRow): HTMLElement {
        const entries = row.enumeration ?? [];
        const wrap = el("span", { class: "enumeration" });
        const list = el("ul", { class: "enumeration-list", hidden: "" });
        for (const entry of entries) {
            list.append(el("li", { title: entry.iri }, entry.label));
        }
        const toggle = el(
            "button",
            {
                class: "expander",
                type: "button",
                click: () => {
                    if (list.hasAttribute("hidden")) {
                        list.removeAttribute("hidden");
                    } else {
                        list.setAttribute("hidden", "");
                    }
                },
            },
            `${entries.length} entit${entries.length === 1 ? "y" : "ies"}`,
        );
        wrap.append(toggle);
        if (row.total_cardinality > entries.length) {
            // more members exist than the capped enumeration shows
            wrap.append(el("span", { class: "badge" }, `${row.total_cardinality} total`));
        }
        wrap.append(list);
        return wrap;
    }

    private renderSparqlLink(row: ResultRow): HTMLElement {
        const endpoint = this.kb?.endpoint;
        if (endpoint) {
            return el(
                "a",
                {
                    class: "sparql",
                    target: "_blank",
                    rel: "noopener",
                    href: `${endpoint}?query=${encodeURIComponent(row.sparql)}`,
                },
                "SPARQL",
            );
        }
        return el(
            "details",
            { class: "sparql" },
            el("summary", {}, "SPARQL"),
            el("pre", {}, row.sparql),
        );
    }

    private showError(message: string): void {
        this.banner.textContent = message;
        this.banner.removeAttribute("hidden");
    }
}

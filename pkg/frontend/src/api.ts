/** Typed client for the query service's JSON API. The console renders these
 * payloads verbatim; no scoring or consistency logic happens client-side. */

export interface KB {
    id: string;
    name: string;
    endpoint?: string | null;
}

export interface EntitySuggestion {
    iri: string;
    label: string;
}

export interface PredicateSuggestion {
    iri: string;
    inverse: boolean;
    label: string;
    tier: number;
    variant: "COUNTING" | "ENUMERATING";
    best_score: number | null;
}

export interface EnumerationEntry {
    iri: string;
    label: string;
}

export interface RowStats {
    mean_value?: number;
    mean_per_subject?: number;
}

export interface ResultRow {
    iri: string;
    inverse: boolean;
    role: "MAIN" | "RELATED";
    label: string;
    variant: "COUNTING" | "ENUMERATING";
    total_cardinality: number;
    sparql: string;
    stats: RowStats;
    alignment_score?: number;
    count_value?: number;
    enumeration?: EnumerationEntry[];
    error?: string;
}

export interface QueryResponse {
    main: ResultRow;
    related: ResultRow[];
}

export interface AlignmentRow {
    counting_iri: string;
    counting_inverse: boolean;
    enumerating_iri: string;
    enumerating_inverse: boolean;
    counting_label: string;
    enumerating_label: string;
    score: number;
    lexical: number | null;
    statistical: number | null;
    support: number | null;
    provenance: "AUTOMATIC" | "MANUAL";
    sparql_cooccurrence: string;
}

export interface AlignmentsResponse {
    total: number;
    rows: AlignmentRow[];
}

export class ApiError extends Error {
    constructor(message: string, readonly code: string, readonly status: number) {
        super(message);
    }
}

type Params = Record<string, string | number | boolean | undefined>;

export class ApiClient {
    constructor(private readonly base: string = "") {}

    private async get<T>(path: string, params: Params = {}): Promise<T> {
        const search = new URLSearchParams();
        for (const [key, value] of Object.entries(params)) {
            if (value !== undefined) {
                search.set(key, String(value));
            }
        }
        const suffix = search.toString() ? `?${search.toString()}` : "";
        let response: Response;
        try {
            response = await fetch(`${this.base}${path}${suffix}`);
        } catch (err) {
            throw new ApiError(`service unreachable: ${String(err)}`, "unreachable", 0);
        }
        let body: unknown = null;
        try {
            body = await response.json();
        } catch {
            // fall through: non-JSON bodies become generic errors below
        }
        if (!response.ok) {
            const error = (body as { error?: { code?: string; message?: string } } | null)?.error;
            throw new ApiError(
                error?.message ?? `HTTP ${response.status}`,
                error?.code ?? "error",
                response.status,
            );
        }
        return body as T;
    }

    kbs(): Promise<KB[]> {
        return this.get<KB[]>("/api/kbs");
    }

    suggestEntities(kb: string, prefix: string, limit = 10): Promise<EntitySuggestion[]> {
        return this.get<EntitySuggestion[]>("/api/suggest/entity", { kb, prefix, limit });
    }

    suggestPredicates(kb: string, entity: string): Promise<PredicateSuggestion[]> {
        return this.get<PredicateSuggestion[]>("/api/suggest/predicate", { kb, entity });
    }

    query(kb: string, subject: string, predicate: string, inverse: boolean): Promise<QueryResponse> {
        return this.get<QueryResponse>("/api/query", { kb, subject, predicate, inverse });
    }

    alignments(kb: string, search = "", offset = 0, limit = 50): Promise<AlignmentsResponse> {
        return this.get<AlignmentsResponse>("/api/alignments", { kb, search, offset, limit });
    }
}

/** Canned service responses, captured from the live API over the fixture KBs.
 * The UI renders these verbatim; tests assert on that rendering. */
import type { AlignmentsResponse, EntitySuggestion, KB, PredicateSuggestion, QueryResponse } from "../src/api.js";

export const KBS: KB[] = [
    {
        "id": "wikidata",
        "name": "Wikidata truthy (fixture)",
        "endpoint": null
    },
    {
        "id": "dbpedia_raw",
        "name": "DBpedia raw (fixture)",
        "endpoint": null
    }
];

export const ENTITY_SUGGESTIONS: EntitySuggestion[] = [
    {
        "iri": "http://www.wikidata.org/entity/Q882",
        "label": "Charlie Chaplin"
    }
];

export const PREDICATE_SUGGESTIONS: PredicateSuggestion[] = [
    {
        "iri": "http://www.wikidata.org/prop/direct/P40",
        "inverse": false,
        "label": "child",
        "tier": 1,
        "variant": "ENUMERATING",
        "best_score": 0.75
    },
    {
        "iri": "http://www.wikidata.org/prop/direct/P1971",
        "inverse": false,
        "label": "number of children",
        "tier": 1,
        "variant": "COUNTING",
        "best_score": 0.75
    },
    {
        "iri": "http://www.wikidata.org/prop/direct/P40",
        "inverse": true,
        "label": "child\u207b\u00b9",
        "tier": 3,
        "variant": "ENUMERATING",
        "best_score": 0.45
    }
];

export const CHAPLIN_QUERY: QueryResponse = {
    "main": {
        "iri": "http://www.wikidata.org/prop/direct/P1971",
        "inverse": false,
        "role": "MAIN",
        "label": "number of children",
        "variant": "COUNTING",
        "total_cardinality": 0,
        "sparql": "SELECT ?o WHERE { <http://www.wikidata.org/entity/Q882> <http://www.wikidata.org/prop/direct/P1971> ?o }",
        "stats": {
            "mean_value": 3.25
        },
        "count_value": 6
    },
    "related": [
        {
            "iri": "http://www.wikidata.org/prop/direct/P40",
            "inverse": false,
            "role": "RELATED",
            "label": "child",
            "variant": "ENUMERATING",
            "total_cardinality": 9,
            "sparql": "SELECT ?o WHERE { <http://www.wikidata.org/entity/Q882> <http://www.wikidata.org/prop/direct/P40> ?o }",
            "stats": {
                "mean_per_subject": 4.0
            },
            "alignment_score": 0.75,
            "enumeration": [
                {
                    "iri": "http://www.wikidata.org/entity/Q1064884",
                    "label": "Charles Chaplin Jr."
                },
                {
                    "iri": "http://www.wikidata.org/entity/Q1928645",
                    "label": "Michael Chaplin"
                },
                {
                    "iri": "http://www.wikidata.org/entity/Q230428",
                    "label": "Geraldine Chaplin"
                },
                {
                    "iri": "http://www.wikidata.org/entity/Q3188838",
                    "label": "Josephine Chaplin"
                },
                {
                    "iri": "http://www.wikidata.org/entity/Q4768545",
                    "label": "Annette Emily Chaplin"
                },
                {
                    "iri": "http://www.wikidata.org/entity/Q5122332",
                    "label": "Victoria Chaplin"
                },
                {
                    "iri": "http://www.wikidata.org/entity/Q5409086",
                    "label": "Eugene Chaplin"
                },
                {
                    "iri": "http://www.wikidata.org/entity/Q6150943",
                    "label": "Jane Chaplin"
                },
                {
                    "iri": "http://www.wikidata.org/entity/Q732103",
                    "label": "Sydney Earle Chaplin"
                }
            ]
        },
        {
            "iri": "http://www.wikidata.org/prop/direct/P40",
            "inverse": true,
            "role": "RELATED",
            "label": "child\u207b\u00b9",
            "variant": "ENUMERATING",
            "total_cardinality": 0,
            "sparql": "SELECT ?s WHERE { ?s <http://www.wikidata.org/prop/direct/P40> <http://www.wikidata.org/entity/Q882> }",
            "stats": {
                "mean_per_subject": 1.0
            },
            "alignment_score": 0.45,
            "enumeration": []
        }
    ]
};

export const RAW_ALIGNMENTS: AlignmentsResponse = {
    "total": 4,
    "rows": [
        {
            "counting_iri": "http://dbpedia.org/property/golds",
            "counting_inverse": false,
            "enumerating_iri": "http://dbpedia.org/property/gold",
            "enumerating_inverse": true,
            "counting_label": "golds",
            "enumerating_label": "gold\u207b\u00b9",
            "score": 0.825,
            "lexical": 1.0,
            "statistical": 0.8333333333333333,
            "support": 2,
            "provenance": "AUTOMATIC",
            "sparql_cooccurrence": "SELECT DISTINCT ?x WHERE { ?x <http://dbpedia.org/property/golds> ?c . ?e <http://dbpedia.org/property/gold> ?x }"
        },
        {
            "counting_iri": "http://dbpedia.org/property/golds",
            "counting_inverse": false,
            "enumerating_iri": "http://dbpedia.org/property/gold",
            "enumerating_inverse": false,
            "counting_label": "golds",
            "enumerating_label": "gold",
            "score": 0.45,
            "lexical": 1.0,
            "statistical": 0.0,
            "support": 0,
            "provenance": "AUTOMATIC",
            "sparql_cooccurrence": "SELECT DISTINCT ?x WHERE { ?x <http://dbpedia.org/property/golds> ?c . ?x <http://dbpedia.org/property/gold> ?e }"
        },
        {
            "counting_iri": "http://dbpedia.org/property/doublestitles",
            "counting_inverse": false,
            "enumerating_iri": "http://dbpedia.org/property/gold",
            "enumerating_inverse": true,
            "counting_label": "doublestitles",
            "enumerating_label": "gold\u207b\u00b9",
            "score": 0.225,
            "lexical": 0.0,
            "statistical": 0.5,
            "support": 2,
            "provenance": "AUTOMATIC",
            "sparql_cooccurrence": "SELECT DISTINCT ?x WHERE { ?x <http://dbpedia.org/property/doublestitles> ?c . ?e <http://dbpedia.org/property/gold> ?x }"
        },
        {
            "counting_iri": "http://dbpedia.org/property/singlestitles",
            "counting_inverse": false,
            "enumerating_iri": "http://dbpedia.org/property/gold",
            "enumerating_inverse": true,
            "counting_label": "singlestitles",
            "enumerating_label": "gold\u207b\u00b9",
            "score": 0.16875,
            "lexical": 0.0,
            "statistical": 0.375,
            "support": 2,
            "provenance": "AUTOMATIC",
            "sparql_cooccurrence": "SELECT DISTINCT ?x WHERE { ?x <http://dbpedia.org/property/singlestitles> ?c . ?e <http://dbpedia.org/property/gold> ?x }"
        }
    ]
};

/** A 1,200-member enumeration truncated to the 1,000-entry cap. */
export function truncatedQuery(): QueryResponse {
    const enumeration = Array.from({ length: 1000 }, (_, i) => ({
        iri: `http://example.org/m${i}`,
        label: `m${i}`,
    }));
    return {
        main: {
            iri: "http://example.org/member",
            inverse: false,
            role: "MAIN",
            label: "member",
            variant: "ENUMERATING",
            total_cardinality: 1200,
            sparql: "SELECT ?o WHERE { <http://example.org/hub> <http://example.org/member> ?o }",
            stats: { mean_per_subject: 1200 },
            enumeration,
        },
        related: [],
    };
}

import { AlignmentsPage } from "./alignments.js";
import { ApiClient } from "./api.js";
import { el } from "./dom.js";
import { SpoPage } from "./spo.js";

function boot(): void {
    const mount = document.getElementById("app");
    if (!mount) return;
    const params = new URLSearchParams(location.search);
    const api = new ApiClient("");

    mount.append(
        el(
            "header",
            { class: "top" },
            el("h1", {}, "counqer"),
            el(
                "nav",
                {},
                el("a", { href: "/spo" }, "SPO query"),
                " · ",
                el("a", { href: "/alignments" }, "Alignments"),
            ),
        ),
    );
    const page = el("main", { class: "page" });
    mount.append(page);

    if (location.pathname === "/alignments") {
        void new AlignmentsPage(page, api, {
            kb: params.get("kb") ?? undefined,
            search: params.get("search") ?? undefined,
        }).init();
    } else {
        void new SpoPage(page, api, {
            kb: params.get("kb") ?? undefined,
            subject: params.get("subject") ?? undefined,
            predicate: params.get("predicate") ?? undefined,
            inverse: params.get("inverse") === "true",
        }).init();
    }
}

document.addEventListener("DOMContentLoaded", boot);

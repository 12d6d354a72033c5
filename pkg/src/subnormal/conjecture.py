"""Tag-multiset conjecture checks and the reproducible claim registry.

For a p-element x, the characters of G not vanishing at x are compared
with those of Sub_G(x) through per-character tags: the p-part of the
degree and the field of values at x (level basic), refined by the
p-part of the value at x and the p-adic field generated by the
character (level plus).  Every conjectured condition is an equality of
such tags, so a conforming bijection exists if and only if the two tag
multisets are equal; no explicit bijection is ever materialized.

Claims are data: one JSON recipe per desk-scale statement, executed by
kind-specific runners whose output documents are deterministic.
"""

import json
import os
from dataclasses import dataclass
from importlib import resources
from math import lcm

from .chartab import character_table, irr_x
from .cyclo import (
    AbelianFieldTag,
    LocalFieldTag,
    PPart,
    character_field,
    local_field_tag,
    p_part,
    value_field,
)
from .permgroup import (
    BoundExceeded,
    GroupError,
    is_normal,
    normalizer,
    perm_order,
)
from .sylow import (
    almost_normal,
    p_class_representatives,
    picky_classes,
    subnormaliser,
    sylow,
)
from .zoo import classical_action, resolve_group, unipotent_of_jordan_type

SCHEMA_VERSION = 1
LEVELS = ("basic", "plus")


# ---------------------------------------------------------------------------
# character tags


@dataclass(frozen=True)
class CharTag:
    """Equality-constrained invariants of one character at one class.

    degree_p_part and value_field carry the basic level; value_p_part
    and char_local_tag join at level plus and refine it.  Local tags
    are only comparable when computed at one common modulus, so paired
    checks thread the same modulus through both tables.
    """

    level: str
    degree_p_part: PPart
    value_field: AbelianFieldTag
    value_p_part: PPart = None
    char_local_tag: LocalFieldTag = None

    def basic_projection(self):
        return CharTag(
            level="basic",
            degree_p_part=self.degree_p_part,
            value_field=self.value_field,
        )

    def to_payload(self):
        payload = {
            "level": self.level,
            "degree_p_part": self.degree_p_part.to_payload(),
            "value_field": self.value_field.to_payload(),
        }
        if self.level == "plus":
            payload["value_p_part"] = self.value_p_part.to_payload()
            payload["char_local_tag"] = self.char_local_tag.to_payload()
        return payload


def char_tag(T, i, k, p, level="basic", modulus=None):
    """Tag of row i of the verified table T at class k."""
    if level not in LEVELS:
        raise GroupError(f"unknown conjecture level {level!r}")
    value = T.values[i][k]
    if value.is_zero():
        raise GroupError(f"row {i} vanishes at class {k}; filter by irr_x first")
    degree = T.values[i][0]
    tag = CharTag(
        level=level,
        degree_p_part=p_part(degree, p),
        value_field=value_field(value),
    )
    if level == "basic":
        return tag
    field = character_field(list(T.values[i]))
    if modulus is None:
        modulus = field.conductor if field.conductor % p == 0 else field.conductor * p
    return CharTag(
        level="plus",
        degree_p_part=tag.degree_p_part,
        value_field=tag.value_field,
        value_p_part=p_part(value, p),
        char_local_tag=local_field_tag(field, p, modulus=modulus),
    )


def _tag_key(tag):
    return json.dumps(tag.to_payload(), sort_keys=True)


def tag_multiset(T, k, p, level="basic", modulus=None):
    """Sorted tag payload keys of the rows not vanishing at class k."""
    tags = [char_tag(T, i, k, p, level, modulus) for i in irr_x(T, k)]
    return tuple(sorted(_tag_key(t) for t in tags))


# ---------------------------------------------------------------------------
# the check


@dataclass(frozen=True)
class ConjectureReport:
    group_order: int
    prime: int
    level: str
    subject: tuple
    subject_order: int
    group_class: int
    sub_class: int
    sub_order: int
    sub_is_whole_group: bool
    picky: bool
    group_tags: tuple
    sub_tags: tuple
    verdict: bool
    witness: dict


def _first_mismatch(left, right):
    """First differing tag in sorted order, with both multiplicities."""
    keys = sorted(set(left) | set(right))
    for key in keys:
        a, b = left.count(key), right.count(key)
        if a != b:
            return {
                "tag": json.loads(key),
                "count_in_group": a,
                "count_in_subnormaliser": b,
            }
    return None


def check_conjecture(G, p, x, level="plus"):
    """Does a tag-preserving bijection Irr^x(G) -> Irr^x(Sub_G(x)) exist?

    Since every condition is an equality of per-character tags, the
    bijection exists exactly when the two tag multisets agree; the
    report carries both multisets and the first mismatch if any.
    At level plus the basic-level verdict is re-derived and the
    refinement (plus true implies basic true) is asserted.
    """
    if level not in LEVELS:
        raise GroupError(f"unknown conjecture level {level!r}")
    res = subnormaliser(G, p, x)
    S = res.subgroup
    T_G = character_table(G)
    whole = S.same_group(G)
    T_S = T_G if whole else character_table(S)
    k_G = T_G.class_of(x)
    k_S = T_S.class_of(x)

    modulus = None
    if level == "plus":
        modulus = lcm(T_G.exponent, T_S.exponent)
        if modulus % p:
            modulus *= p

    group_tags = tag_multiset(T_G, k_G, p, level, modulus)
    sub_tags = tag_multiset(T_S, k_S, p, level, modulus)
    verdict = group_tags == sub_tags

    if level == "plus":
        basic_g = tag_multiset(T_G, k_G, p, "basic")
        basic_s = tag_multiset(T_S, k_S, p, "basic")
        if verdict and basic_g != basic_s:
            raise GroupError("plus-level tags matched but their basic projections differ")

    return ConjectureReport(
        group_order=G.order,
        prime=p,
        level=level,
        subject=tuple(x),
        subject_order=perm_order(x),
        group_class=k_G,
        sub_class=k_S,
        sub_order=S.order,
        sub_is_whole_group=whole,
        picky=res.is_picky,
        group_tags=group_tags,
        sub_tags=sub_tags,
        verdict=verdict,
        witness=None if verdict else _first_mismatch(group_tags, sub_tags),
    )


def report_document(report):
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "conjecture_report",
        "group_order": report.group_order,
        "prime": report.prime,
        "level": report.level,
        "subject": list(report.subject),
        "subject_order": report.subject_order,
        "group_class": report.group_class,
        "sub_class": report.sub_class,
        "sub_order": report.sub_order,
        "sub_is_whole_group": report.sub_is_whole_group,
        "picky": report.picky,
        "group_tags": [json.loads(t) for t in report.group_tags],
        "sub_tags": [json.loads(t) for t in report.sub_tags],
        "verdict": report.verdict,
        "witness": report.witness,
    }


def mckay_counts(G, p):
    """(|Irr_{p'}(G)|, |Irr_{p'}(N_G(P))|) for P a Sylow p-subgroup."""
    T_G = character_table(G)
    N = normalizer(G, sylow(G, p))
    T_N = T_G if N.same_group(G) else character_table(N)
    count = lambda T: sum(1 for d in T.degrees if d % p)
    return count(T_G), count(T_N)


# ---------------------------------------------------------------------------
# claim registry


def _claims_root():
    override = os.environ.get("SUBNORMAL_DATA_DIR")
    if override:
        return os.path.join(override, "claims")
    return resources.files(__package__).joinpath("data", "claims")


def claim_ids():
    root = _claims_root()
    if isinstance(root, str):
        names = os.listdir(root) if os.path.isdir(root) else []
    else:
        names = [entry.name for entry in root.iterdir()]
    return tuple(sorted(n[:-5] for n in names if n.endswith(".json")))


def load_claim(claim_id):
    root = _claims_root()
    name = f"{claim_id}.json"
    try:
        if isinstance(root, str):
            with open(os.path.join(root, name), encoding="utf-8") as fh:
                doc = json.load(fh)
        else:
            doc = json.loads(root.joinpath(name).read_text(encoding="utf-8"))
    except (FileNotFoundError, OSError):
        raise GroupError(f"no claim named {claim_id!r}") from None
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise GroupError(f"claim {claim_id!r}: unsupported schema version")
    if doc.get("id") != claim_id:
        raise GroupError(f"claim {claim_id!r}: file id field disagrees")
    return doc


def _select_rows(rows, select, order_of, centralizer_of):
    if not select or select.get("scope") == "all":
        return list(rows)
    picked = []
    for row in rows:
        if "order" in select and order_of(row) != select["order"]:
            continue
        if (
            "centralizer_order" in select
            and centralizer_of(row) != select["centralizer_order"]
        ):
            continue
        picked.append(row)
    return picked


def _run_picky(claim, G, p):
    rows = _select_rows(
        picky_classes(G, p),
        claim.get("select"),
        lambda r: r.element_order,
        lambda r: r.centralizer_order,
    )
    if not rows:
        raise GroupError("class selector matched nothing")
    picky_rows = [r for r in rows if r.picky]
    observed = {
        "class_count": len(rows),
        "methods_agree": all(r.methods_agree for r in rows),
        "all_picky": all(r.picky for r in rows),
        "exists_picky": bool(picky_rows),
        "picky_element_orders": sorted({r.element_order for r in picky_rows}),
        "rows": [
            [r.element_order, r.class_size, r.centralizer_order,
             r.subnormaliser_order, r.picky]
            for r in rows
        ],
    }
    if "sub_equals_sylow_normalizer" in claim.get("expect", {}):
        n_order = normalizer(G, sylow(G, p)).order
        observed["sub_equals_sylow_normalizer"] = all(
            r.subnormaliser_order == n_order for r in picky_rows
        )
    return observed


def _run_subnormaliser(claim, G, p):
    reps = _select_rows(
        p_class_representatives(G, p),
        claim.get("select"),
        lambda pair: pair[0].rep_order,
        lambda pair: pair[0].centralizer_order,
    )
    if not reps:
        raise GroupError("class selector matched nothing")
    classes = []
    for cls, y in reps:
        res = subnormaliser(G, p, y)
        classes.append(
            {
                "element_order": cls.rep_order,
                "class_size": cls.size,
                "centralizer_order": cls.centralizer_order,
                "sub_order": res.subgroup.order,
                "picky": res.is_picky,
                "sub_is_whole_group": res.subgroup.order == G.order,
            }
        )
    observed = {
        "class_count": len(classes),
        "classes": classes,
        "picky": all(c["picky"] for c in classes),
        "sub_is_whole_group": all(c["sub_is_whole_group"] for c in classes),
        "sub_orders": sorted({c["sub_order"] for c in classes}),
    }
    if "sub_equals_sylow_normalizer" in claim.get("expect", {}):
        n_order = normalizer(G, sylow(G, p)).order
        observed["sub_equals_sylow_normalizer"] = all(
            c["picky"] and c["sub_order"] == n_order for c in classes
        )
    return observed


def _run_almost_normal(claim, G, p):
    return {
        "almost_normal": almost_normal(G, p),
        "sylow_normal": is_normal(G, sylow(G, p)),
    }


def _run_conjecture(claim, G, p):
    level = claim.get("level", "plus")
    reps = _select_rows(
        p_class_representatives(G, p),
        claim.get("select"),
        lambda pair: pair[0].rep_order,
        lambda pair: pair[0].centralizer_order,
    )
    if not reps:
        raise GroupError("class selector matched nothing")
    classes = []
    for cls, y in reps:
        report = check_conjecture(G, p, y, level=level)
        entry = {
            "element_order": cls.rep_order,
            "class_size": cls.size,
            "sub_order": report.sub_order,
            "picky": report.picky,
            "verdict": report.verdict,
        }
        if not report.verdict:
            entry["witness"] = report.witness
        classes.append(entry)
    return {
        "level": level,
        "class_count": len(classes),
        "classes": classes,
        "all_true": all(c["verdict"] for c in classes),
    }


def _run_picky_jordan(claim, G, p):
    sel = claim["select"]
    act = classical_action(sel["family"], sel["n"], sel["q"])
    if act.group is not G:
        raise GroupError("jordan selector family disagrees with the claim group")
    M = unipotent_of_jordan_type(act.mg, tuple(sel["blocks"]))
    x = act.matrix_to_perm(M)
    res = subnormaliser(G, p, x)
    return {
        "element_order": perm_order(x),
        "count_containing": res.count_containing,
        "sub_order": res.subgroup.order,
        "picky": res.is_picky,
        "sub_equals_sylow_normalizer": res.subgroup.same_group(res.sylow_normalizer),
    }


_RUNNERS = {
    "picky": _run_picky,
    "subnormaliser": _run_subnormaliser,
    "almost-normal": _run_almost_normal,
    "conjecture": _run_conjecture,
    "picky-jordan": _run_picky_jordan,
}


def reproduce_claim(claim_id):
    """Run one registry claim; the result document is deterministic."""
    claim = load_claim(claim_id)
    kind = claim.get("kind")
    runner = _RUNNERS.get(kind)
    if runner is None:
        raise GroupError(f"claim {claim_id!r}: unknown kind {kind!r}")
    result = {
        "schema_version": SCHEMA_VERSION,
        "kind": "claim_result",
        "id": claim_id,
        "statement": claim.get("statement", ""),
        "group": claim["group"],
        "prime": claim["prime"],
        "expect": claim["expect"],
    }
    try:
        G = resolve_group(claim["group"])
        observed = runner(claim, G, claim["prime"])
    except BoundExceeded as exc:
        result["status"] = "skipped (bound)"
        result["detail"] = str(exc)
        return result
    mismatches = {
        key: observed.get(key)
        for key, want in claim["expect"].items()
        if observed.get(key) != want
    }
    result["observed"] = observed
    result["status"] = "pass" if not mismatches else "fail"
    if mismatches:
        result["mismatches"] = mismatches
    return result


def reproduce_all(ids=None, workers=1, out_dir=None):
    """Run claims (all by default), sorted by id; optionally persist.

    Claims are independent, so they may run concurrently up to the
    worker count; results are assembled in id order regardless of
    completion order, keeping the output deterministic.
    """
    targets = tuple(ids) if ids is not None else claim_ids()
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = dict(zip(targets, pool.map(reproduce_claim, targets)))
    else:
        results = {cid: reproduce_claim(cid) for cid in targets}
    ordered = [results[cid] for cid in sorted(results)]
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        for doc in ordered:
            path = os.path.join(out_dir, f"{doc['id']}.result.json")
            with open(path, "w", encoding="utf-8") as fh:
                json.dump(doc, fh, sort_keys=True, indent=1)
                fh.write("\n")
    return ordered

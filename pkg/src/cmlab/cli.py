"""Command-line surface: deterministic reports over the package's solvers.

Every command reads JSON input (where it takes input at all), renders either
a plain-text table or JSON, and exits 0 on success, 1 on a domain error with
a message naming the violated precondition, 2 on a usage error.  Output is
byte-for-byte deterministic for fixed inputs; no network access and no
environment-variable configuration.
"""
from __future__ import annotations

import argparse
import json
import sys

from .cmtypes import (
    CMPairSpec,
    compagnon_labels,
    orbit_decomposition,
    reflex_labels,
    reflex_type,
    subset_rank,
)
from .galois import group_from_json, weyl_full
from .hodge import (
    CycleIndex,
    ReductionError,
    admissible,
    canonical_form_weyl,
    pohlmann_basis,
    quadruple_support,
    quadruple_to_cycle,
    reduce_to_low_degree,
    relation_of_cycle,
    support_and_equivalence,
)
from .hyperoct import Subset, act_subset
from .intlattice import kernel_basis
from .reciprocity import (
    ANTIWEYL,
    SIMPLE,
    MonomialRelation,
    kernel_N,
    mt_dimension,
    rec_star_antiweyl,
    relation_to_json,
    relations_from_kernel,
    render_relation,
)
from .sl2check import check_sl2

# the worked cyclotomic regression: base pair, its reflex, and the two
# factorizations through the compagnon index set L = {5, 6}
_MU19_M = 18
_MU19_PHI = (0, 2, 3, 6, 10, 13, 14, 16, 17)
_MU19_PHI_STAR = (0, 1, 2, 4, 5, 8, 12, 15, 16)
_MU19_L = (5, 6)
_MU19_MEDIATED = (((0, 17), 3), ((2, 14), 6))


def _set_str(I: Subset) -> str:
    return "{" + ",".join(str(m) for m in I.members()) + "}"


def _labels_str(labels) -> str:
    return " ".join(f"[{a}]" for a in labels)


def _slot_str(slot, copy, spec=None) -> str:
    if isinstance(slot, Subset):
        return f"{_set_str(slot)}@{copy}"
    name = spec.label_name(slot) if spec is not None else (
        f"phibar{slot.index}" if slot.bar else f"phi{slot.index}"
    )
    return f"[{name}]@{copy}"


def _cycle_str(c: CycleIndex, spec=None) -> str:
    if not c.entries:
        return "(empty)"
    return " ".join(_slot_str(s, l, spec) for s, l in c.entries)


def _cycle_json(c: CycleIndex) -> list:
    out = []
    for slot, copy in c.entries:
        if isinstance(slot, Subset):
            out.append({"set": list(slot.members()), "copy": copy})
        else:
            out.append({"phi": slot.index, "bar": slot.bar, "copy": copy})
    return out


def _signed_sum(row, names) -> str:
    parts = []
    for name, c in zip(names, row):
        if c == 0:
            continue
        term = ("" if abs(c) == 1 else f"{abs(c)}*") + f"[{name}]"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"- {term}")
    return " ".join(parts) if parts else "0"


def _read_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a JSON object")
    return data


def _spec_from_data(data: dict) -> CMPairSpec:
    if "cyclic" in data:
        c = data["cyclic"]
        return CMPairSpec.from_cyclic(int(c["M"]), [int(a) for a in c["phi"]])
    if "weyl" in data:
        return CMPairSpec.weyl(int(data["weyl"]))
    if "generators" in data:
        group = group_from_json(data)
        return CMPairSpec(
            group,
            tuple(f"phi{j}" for j in range(1, group.g + 1)),
            tuple(f"phibar{j}" for j in range(1, group.g + 1)),
        )
    raise ValueError('input needs "cyclic", "weyl" or "generators"')


def _load_spec(path: str) -> CMPairSpec:
    return _spec_from_data(_read_json(path))


def _subset(g: int, members) -> Subset:
    return Subset.of(g, [int(x) for x in members])


def _tail_subsets(g: int):
    return sorted((Subset(g, b) for b in range(1 << g) if not b & 1), key=subset_rank)


def _label_table(spec: CMPairSpec):
    """Pairs (label, orbit index set I([label])) in label order."""
    empty = Subset.empty(spec.g)
    return [
        (a, act_subset(spec.group.element_for_label(a), empty))
        for a in sorted(spec.group.labels)
    ]


def _cmd_orbits(args):
    spec = _load_spec(args.input)
    orbits = orbit_decomposition(spec.group)
    lines = []
    table = None
    if spec.group.labels is not None:
        table = {str(a): list(I.members()) for a, I in _label_table(spec)}
        lines.append("orbit table:")
        lines.extend(f"I([{a}]) = {_set_str(I)}" for a, I in _label_table(spec))
    lines.append(f"orbits: {len(orbits)}")
    lines.extend(
        f"orbit {k}: degree {len(o)}, key {_set_str(o[0])}"
        for k, o in enumerate(orbits)
    )
    obj = {
        "table": table,
        "orbits": [
            {"degree": len(o), "key": list(o[0].members()),
             "members": [list(I.members()) for I in o]}
            for o in orbits
        ],
    }
    return obj, lines


def _cmd_reflex(args):
    spec = _load_spec(args.input)
    ref = reflex_type(spec)
    labels = reflex_labels(spec)
    lines = [
        f"reflex degree: {ref.degree}",
        f"reflex labels: {_labels_str(labels)}",
    ]
    lines.extend(f"type {_set_str(I)}" for I in ref.cm_type)
    obj = {
        "degree": ref.degree,
        "labels": list(labels),
        "cm_type": [list(I.members()) for I in ref.cm_type],
    }
    return obj, lines


def _cmd_compagnons(args):
    spec = _load_spec(args.input)
    orbits = orbit_decomposition(spec.group)
    labeled = spec.group.labels is not None
    lines = [f"compagnons: {len(orbits)}"]
    items = []
    for k, orbit in enumerate(orbits):
        key = orbit[0]
        labels = None
        if labeled:
            labels = reflex_labels(spec) if k == 0 else compagnon_labels(spec, key)
        line = f"compagnon {k}: degree {len(orbit)}, key {_set_str(key)}"
        if labels is not None:
            line += f", labels {_labels_str(labels)}"
        lines.append(line)
        items.append(
            {"degree": len(orbit), "key": list(key.members()),
             "labels": None if labels is None else list(labels)}
        )
    return {"compagnons": items}, lines


def _kernel_report(spec: CMPairSpec):
    lattice = kernel_N(spec)
    symbols = [f"Th[{name}]" for name in spec.phi_names]
    rels = relations_from_kernel(lattice, SIMPLE)
    lines = [
        f"kernel rank: {lattice.rank}",
        f"mt dimension: {mt_dimension(spec)}",
    ]
    lines.extend(
        f"generator: {_signed_sum(row, spec.phi_names)}"
        for row in lattice.basis.entries
    )
    lines.extend(f"relation: {render_relation(r, symbols)}" for r in rels)
    obj = {
        "rank": lattice.rank,
        "mt_dimension": mt_dimension(spec),
        "basis": [list(row) for row in lattice.basis.entries],
        "relations": [relation_to_json(r, symbols) for r in rels],
    }
    return obj, lines, rels


def _cmd_kernel(args):
    obj, lines, _ = _kernel_report(_load_spec(args.input))
    return obj, lines


def _cmd_relations(args):
    if args.weyl_full:
        if args.g is None:
            raise ValueError("--weyl-full needs --g")
        lattice = kernel_basis(rec_star_antiweyl(args.g))
        rels = relations_from_kernel(lattice, ANTIWEYL)
        symbols = None
        side = ANTIWEYL
    else:
        if args.input is None:
            raise ValueError("needs --input FILE or --weyl-full with --g")
        spec = _load_spec(args.input)
        rels = relations_from_kernel(kernel_N(spec), SIMPLE)
        symbols = [f"Th[{name}]" for name in spec.phi_names]
        side = SIMPLE
    lines = [f"relations: {len(rels)}"]
    lines.extend(f"relation: {render_relation(r, symbols)}" for r in rels)
    obj = {"side": side, "relations": [relation_to_json(r, symbols) for r in rels]}
    return obj, lines


def _cmd_hodge_basis(args):
    if args.weyl_full:
        if args.g is None:
            raise ValueError("--weyl-full needs --g")
        target, spec = args.g, None
    else:
        if args.input is None:
            raise ValueError("needs --input FILE or --weyl-full with --g")
        spec = _load_spec(args.input)
        target = spec
    kwargs = {"jobs": args.jobs}
    if args.budget is not None:
        kwargs["budget"] = args.budget
    basis = pohlmann_basis(target, args.p, args.n, **kwargs)
    lines = [f"basis size: {len(basis)}"]
    lines.extend(f"{k}: {_cycle_str(c, spec)}" for k, c in enumerate(basis))
    obj = {
        "p": args.p,
        "n": args.n,
        "size": len(basis),
        "basis": [_cycle_json(c) for c in basis],
    }
    return obj, lines


def _certificate_json(cert) -> dict:
    return {
        "target": relation_to_json(cert.target),
        "parts": [
            {"gen": relation_to_json(gen), "coeff": coeff}
            for gen, coeff in cert.parts
        ],
        "verified": cert.verify(),
    }


def _cmd_reduce(args):
    data = _read_json(args.input)
    if "g" not in data or "vec" not in data:
        raise ValueError('reduce input needs "g" and "vec"')
    g = int(data["g"])
    vec = tuple(int(x) for x in data["vec"])
    rel = MonomialRelation(ANTIWEYL, g, vec, int(data.get("tau", 0)))
    cert = reduce_to_low_degree(rel, g)
    lines = [
        f"target: {render_relation(rel)}",
        f"parts: {len(cert.parts)}",
    ]
    lines.extend(
        f"{coeff:+d} * {render_relation(gen)}" for gen, coeff in cert.parts
    )
    lines.append("verified: yes" if cert.verify() else "verified: no")
    return _certificate_json(cert), lines


def _cmd_support(args):
    data = _read_json(args.input)
    if "g" not in data or "first" not in data:
        raise ValueError('support input needs "g" and "first"')
    g = int(data["g"])
    group = weyl_full(g)

    def quad(entry):
        if len(entry) != 4:
            raise ValueError("a quadruple has four index sets")
        return tuple(_subset(g, part) for part in entry)

    q1 = quad(data["first"])
    lines = [f"support size: {len(quadruple_support(q1, group))}"]
    obj = {"support_size": len(quadruple_support(q1, group))}
    try:
        r, s = canonical_form_weyl(q1, g)
    except ValueError:
        obj["canonical_form"] = None
    else:
        lines.append(f"canonical form: r={r} s={s}")
        obj["canonical_form"] = [r, s]
    if "second" in data:
        q2 = quad(data["second"])
        (s1, s2), equal = support_and_equivalence(q1, q2, group)
        lines.append(f"second support size: {len(s2)}")
        lines.append(f"equivalent: {'yes' if equal else 'no'}")
        obj["second_support_size"] = len(s2)
        obj["equivalent"] = equal
    return obj, lines


def _cmd_sl2_check(args):
    g = args.g
    if g is None:
        raise ValueError("sl2-check needs --g")
    reports = []
    lines = []
    for U in _tail_subsets(g):
        report = check_sl2(U, g)
        failed = [k for k, ok in report.items() if not ok]
        status = "pass" if not failed else "FAIL (" + ", ".join(failed) + ")"
        lines.append(f"U={_set_str(U)}: {status}")
        reports.append({"U": list(U.members()), **report})
    ok = all(all(r[k] for k in ("bracket_vv_zero", "bracket_vvbar_diagonal", "triple_identities")) for r in reports)
    lines.append("all checks passed" if ok else "some checks FAILED")
    return {"g": g, "reports": reports}, lines


def _cmd_example_mu19(args):
    spec_star = CMPairSpec.from_cyclic(_MU19_M, list(_MU19_PHI_STAR))
    spec_phi = CMPairSpec.from_cyclic(_MU19_M, list(_MU19_PHI))
    g = spec_star.g
    lines = [
        "mu19 regression report",
        "======================",
        "",
        f"base cyclic pair: M={_MU19_M}, phi* = {_labels_str(_MU19_PHI_STAR)}",
        f"reflex cyclic pair: M={_MU19_M}, phi = {_labels_str(_MU19_PHI)}",
        "",
        "orbit table",
        "-----------",
    ]
    table = _label_table(spec_star)
    lines.extend(f"I([{a}]) = {_set_str(I)}" for a, I in table)

    orbits = orbit_decomposition(spec_star.group)
    degree_census = {}
    for o in orbits:
        degree_census[len(o)] = degree_census.get(len(o), 0) + 1
    lines += [
        "",
        "orbit census",
        "------------",
        f"orbits: {len(orbits)}",
        "degrees: " + ", ".join(
            f"{d} x {degree_census[d]}" for d in sorted(degree_census)
        ),
    ]

    recovered = reflex_labels(spec_star)
    lines += [
        "",
        "reflex recovery",
        "---------------",
        f"labels with 1 not in I([a]): {_labels_str(recovered)}",
        f"matches phi: {'yes' if tuple(recovered) == _MU19_PHI else 'no'}",
    ]

    L = _subset(g, _MU19_L)
    Lp = _subset(g, (4, 6, 7))
    lines += [
        "",
        "compagnons",
        "----------",
        f"L = {_set_str(L)}: {_labels_str(compagnon_labels(spec_star, L))}",
        f"L' = {_set_str(Lp)}: {_labels_str(compagnon_labels(spec_star, Lp))}",
    ]

    kernel_obj, kernel_lines, rels = _kernel_report(spec_phi)
    lines += ["", "period kernel (reflex pair)", "---------------------------"]
    lines += kernel_lines

    # lift each label relation to the anti-Weyl side via the orbit table
    index_of = dict(table)
    phi_list = list(_MU19_PHI)

    def lift(rel):
        vec = [0] * (1 << g)
        for j, c in enumerate(rel.vec):
            vec[subset_rank(index_of[phi_list[j]])] += c
        return MonomialRelation(ANTIWEYL, g, tuple(vec))

    symbols = [f"Th[{name}]" for name in spec_phi.phi_names]
    certificates = []
    lines += ["", "factorization", "-------------"]
    for rel in rels:
        cubic = lift(rel)
        lines.append(f"cubic: {render_relation(rel, symbols)}")
        if rel.vec[phi_list.index(17)] != 0:
            for (a, b), mediator in _MU19_MEDIATED:
                quad = (index_of[a], index_of[b], index_of[mediator], L)
                ok = admissible(*quad)
                quad_str = ", ".join(_set_str(X) for X in quad)
                lines.append(
                    f"  quadruple ({quad_str}): "
                    + ("admissible" if ok else "NOT admissible")
                )
            qa = relation_of_cycle(
                quadruple_to_cycle(index_of[0], index_of[17], index_of[3], L)
            )
            qb = relation_of_cycle(
                quadruple_to_cycle(index_of[2], index_of[14], index_of[6], L)
            )
            diff = tuple(x - y for x, y in zip(qa.vec, qb.vec))
            match = diff == cubic.vec or tuple(-d for d in diff) == cubic.vec
            lines.append(
                "  quadratic difference reproduces the cubic: "
                + ("yes" if match else "no")
            )
        cert = reduce_to_low_degree(cubic, g)
        signs = sorted({c for _, c in cert.parts})
        sign_str = "{" + ",".join(f"{c:+d}" for c in signs) + "}"
        lines.append(
            f"  reduction certificate: {len(cert.parts)} parts, "
            f"coefficients in {sign_str}, "
            + ("verified" if cert.verify() else "NOT verified")
        )
        certificates.append(_certificate_json(cert))

    obj = {
        "phi": list(_MU19_PHI),
        "phi_star": list(_MU19_PHI_STAR),
        "orbit_table": {str(a): list(I.members()) for a, I in table},
        "orbit_degrees": {str(d): c for d, c in sorted(degree_census.items())},
        "reflex_labels": list(recovered),
        "compagnon_L": list(compagnon_labels(spec_star, L)),
        "compagnon_Lprime": list(compagnon_labels(spec_star, Lp)),
        "kernel": kernel_obj,
        "certificates": certificates,
    }
    return obj, lines


_COMMANDS = {
    "orbits": _cmd_orbits,
    "reflex": _cmd_reflex,
    "compagnons": _cmd_compagnons,
    "kernel": _cmd_kernel,
    "relations": _cmd_relations,
    "hodge-basis": _cmd_hodge_basis,
    "reduce": _cmd_reduce,
    "support": _cmd_support,
    "sl2-check": _cmd_sl2_check,
    "example-mu19": _cmd_example_mu19,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cmlab",
        description="Monomial period relations, Hodge-class bases and sl2 checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, description, **flags):
        sp = sub.add_parser(name, help=description, description=description)
        sp.add_argument("--format", choices=("table", "json"), default="table")
        if flags.get("input"):
            sp.add_argument("--input", required=flags["input"] == "required",
                            metavar="FILE", help="JSON input file")
        if flags.get("weyl"):
            sp.add_argument("--weyl-full", action="store_true",
                            help="use the full hyperoctahedral group at --g")
            sp.add_argument("--g", type=int)
        if flags.get("pn"):
            sp.add_argument("--p", type=int, required=True)
            sp.add_argument("--n", type=int, required=True)
            sp.add_argument("--budget", type=int)
            sp.add_argument("--jobs", type=int, default=1)
        return sp

    add("orbits", "orbit decomposition of the group on index sets", input="required")
    add("reflex", "reflex CM type of a labeled pair", input="required")
    add("compagnons", "all simple factors with degrees and labels", input="required")
    add("kernel", "period-relation kernel, rank and monomial relations", input="required")
    add("relations", "sign-normalized monomial relations", input="optional", weyl=True)
    add("hodge-basis", "Hodge-class basis in degree p at power n",
        input="optional", weyl=True, pn=True)
    add("reduce", "degree <= 2 reduction certificate for a relation", input="required")
    add("support", "support size, canonical form and equivalence of quadruples",
        input="required")
    sp = sub.add_parser("sl2-check", help="sl2-triple verification over all index sets",
                        description="sl2-triple verification over all index sets")
    sp.add_argument("--format", choices=("table", "json"), default="table")
    sp.add_argument("--g", type=int, required=True)
    sp = sub.add_parser("example-mu19", help="worked cyclotomic regression report",
                        description="worked cyclotomic regression report")
    sp.add_argument("--format", choices=("table", "json"), default="table")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = _COMMANDS[args.command]
    try:
        obj, lines = handler(args)
    except (ReductionError, ValueError, KeyError) as exc:
        message = exc.args[0] if exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        return 1
    if args.format == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))
    return 0


if __name__ == "__main__":
    sys.exit(main())

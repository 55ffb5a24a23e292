"""Command-line front door.

Reads carriers and monoids from JSON, dispatches to the library, and prints
one deterministic JSON envelope (or raw DOT) per run.  Exit status is 0 when
every requested check passes, 1 when a check fails with a counterexample in
the report, 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from . import hierarchy, oracle
from .downsets import enumerate_downsets, enumerate_ideals
from .errors import IdealforgeError, NoFactorizationError
from .higman import AtomAlphabet, HWord, dp_agreement_sweep, leq_H
from .monoid import (
    check_axioms,
    check_plus_property,
    check_prime_product_lemma,
    monoid_from_json,
    prime_factorization,
    primes,
)
from .qo import FiniteQO, equiv_classes, from_json, hasse_dot, quotient
from .reflect import build_reflection, verify_reflection
from .report import Report


@dataclass(frozen=True)
class RunConfig:
    command: tuple[str, ...]
    paths: tuple[str, ...] = ()
    alpha: int = 1
    maxlen: int = 4
    kind: str = "ihat"
    fmt: str = "json"
    max_members: int | None = None
    seed: int = 0
    lhs: str = ""
    rhs: str = ""
    element: str | None = None
    max_atoms: int = 3


def _load_json(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _load_qo(path: str) -> FiniteQO:
    return from_json(_load_json(path))


def _load_alphabet(path: str) -> AtomAlphabet:
    obj = _load_json(path)
    q = from_json(obj)
    idem = [q.index(lab) for lab in obj.get("idem", [])]
    return AtomAlphabet(q, idem)


def _word(alpha: AtomAlphabet, text: str) -> HWord:
    if text in ("", "ε"):
        return HWord(alpha, [])
    return HWord(alpha, [alpha.order.index(lab) for lab in text.split(",")])


def _json_default(x):
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(f"not JSON serializable: {type(x).__name__}")


def _envelope(config: RunConfig, payload) -> str:
    doc = {
        "command": " ".join(config.command),
        "version": __version__,
        "seed": config.seed,
        "report": payload,
    }
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False, default=_json_default) + "\n"


def _report_payload(reports: list[Report]) -> tuple[int, dict]:
    ok = all(r.passed for r in reports)
    payload = {"passed": ok, "reports": [r.to_json() for r in reports]}
    return (0 if ok else 1), payload


def _cmd_qo(config: RunConfig) -> tuple[int, str]:
    q = _load_qo(config.paths[0])
    sub = config.command[1]
    if sub == "validate":
        payload = {
            "ok": True,
            "elements": len(q.elements),
            "classes": len(equiv_classes(q)),
        }
        return 0, _envelope(config, payload)
    if sub == "quotient":
        qm = quotient(q)
        payload = {
            "classes": list(qm.classes.elements),
            "class_of": {q.elements[i]: qm.class_of[i] for i in range(q.n)},
            "order": [
                [qm.classes.elements[i], qm.classes.elements[j]]
                for i in range(qm.classes.n)
                for j in range(qm.classes.n)
                if qm.classes.leq[i, j]
            ],
        }
        return 0, _envelope(config, payload)
    return 0, hasse_dot(q)


def _cmd_downsets(config: RunConfig) -> tuple[int, str]:
    q = _load_qo(config.paths[0])
    kind = config.command[0]
    rows = enumerate_downsets(q) if kind == "downsets" else enumerate_ideals(q)
    payload = {"count": len(rows), "members": [sorted(d.labels) for d in rows]}
    return 0, _envelope(config, payload)


def _cmd_monoid(config: RunConfig) -> tuple[int, str]:
    m = monoid_from_json(_load_json(config.paths[0]))
    sub = config.command[1]
    if sub == "check":
        code, payload = _report_payload([check_axioms(m), check_plus_property(m)])
        return code, _envelope(config, payload)
    if sub == "primes":
        labels = sorted(m.label(i) for i in primes(m))
        return 0, _envelope(config, {"primes": labels})
    if config.element is None:
        raise IdealforgeError("monoid factor needs --element")
    target = m.order.index(config.element)
    try:
        factors = prime_factorization(m, target)
    except NoFactorizationError as e:
        payload = {"passed": False, "element": config.element, "reason": str(e)}
        return 1, _envelope(config, payload)
    payload = {
        "passed": True,
        "element": config.element,
        "factors": [m.label(i) for i in factors],
    }
    return 0, _envelope(config, payload)


def _cmd_higman(config: RunConfig) -> tuple[int, str]:
    alpha = _load_alphabet(config.paths[0])
    u = _word(alpha, config.lhs)
    v = _word(alpha, config.rhs)
    payload = {"lhs": list(u.labels), "rhs": list(v.labels), "leq": leq_H(u, v)}
    return 0, _envelope(config, payload)


def _cmd_hier(config: RunConfig) -> tuple[int, str]:
    q = _load_qo(config.paths[0])
    sub = config.command[1]
    if sub == "build" and config.kind != "symbolic":
        level = hierarchy.build_level(
            q, config.alpha, kind=config.kind, max_members=config.max_members
        )
        payload = {
            "kind": config.kind,
            "alpha": config.alpha,
            "levels": [
                {"alpha": lv.alpha, "count": lv.cardinality, "members": [x.serial for x in lv.members]}
                for lv in level.chain()
            ],
        }
        return 0, _envelope(config, payload)
    system = hierarchy.build_atoms(q, config.alpha, max_members=config.max_members)
    if sub == "atoms" and config.fmt == "dot":
        return 0, hasse_dot(system.alphabet.order, name="atoms")
    payload = {
        "alpha": system.alpha,
        "level_counts": list(system.level_counts),
        "atoms": [
            {"serial": a.serial, "level": a.level, "idem": a.is_idem}
            for a in system.atoms
        ],
        "order": [
            [int(system.alphabet.order.leq[i, j]) for j in range(len(system.atoms))]
            for i in range(len(system.atoms))
        ],
    }
    return 0, _envelope(config, payload)


def _cmd_verify(config: RunConfig) -> tuple[int, str]:
    sub = config.command[1]
    if sub == "higman-dp":
        reports = [dp_agreement_sweep(max_atoms=config.max_atoms, max_pair_len=config.maxlen)]
    elif sub == "axioms":
        m = monoid_from_json(_load_json(config.paths[0]))
        reports = [check_axioms(m), check_plus_property(m), check_prime_product_lemma(m)]
    else:
        q = _load_qo(config.paths[0])
        if sub == "two-forms":
            reports = [oracle.check_two_forms(q, maxlen=config.maxlen)]
        elif sub == "containment":
            reports = [oracle.check_containment_agreement(q, config.alpha, maxlen=config.maxlen)]
        elif sub == "xywz":
            reports = [oracle.check_xy_wz(q, maxlen=config.maxlen)]
        else:
            table = build_reflection(q, config.alpha)
            reports = [verify_reflection(table)]
    code, payload = _report_payload(reports)
    return code, _envelope(config, payload)


_HANDLERS = {
    "qo": _cmd_qo,
    "downsets": _cmd_downsets,
    "ideals": _cmd_downsets,
    "monoid": _cmd_monoid,
    "higman": _cmd_higman,
    "hier": _cmd_hier,
    "verify": _cmd_verify,
}


def dispatch(config: RunConfig) -> tuple[int, str]:
    return _HANDLERS[config.command[0]](config)


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="idealforge")
    top.add_argument("--seed", type=int, default=0, help="recorded in every report")
    top.add_argument(
        "--max-members",
        type=int,
        default=None,
        help="member-count bound for hierarchy builds (env IDEALFORGE_MAX_MEMBERS)",
    )
    sub = top.add_subparsers(dest="cmd", required=True)

    qo = sub.add_parser("qo", help="inspect a quasi-order file")
    qosub = qo.add_subparsers(dest="sub", required=True)
    for name in ("validate", "quotient", "dot"):
        p = qosub.add_parser(name)
        p.add_argument("path")

    for name in ("downsets", "ideals"):
        p = sub.add_parser(name, help=f"enumerate {name} of a quasi-order")
        p.add_argument("path")

    mo = sub.add_parser("monoid", help="check or factor a multiplicative carrier")
    mosub = mo.add_subparsers(dest="sub", required=True)
    for name in ("check", "primes", "factor"):
        p = mosub.add_parser(name)
        p.add_argument("path")
        if name == "factor":
            p.add_argument("--element", required=True)

    hg = sub.add_parser("higman", help="compare words over an annotated alphabet")
    hgsub = hg.add_subparsers(dest="sub", required=True)
    p = hgsub.add_parser("leq")
    p.add_argument("--alphabet", required=True)
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)

    hi = sub.add_parser("hier", help="build iterated ideal stages or their atoms")
    hisub = hi.add_subparsers(dest="sub", required=True)
    p = hisub.add_parser("build")
    p.add_argument("--qo", required=True)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--kind", choices=("ihat", "vstar", "istar", "symbolic"), default="ihat")
    p = hisub.add_parser("atoms")
    p.add_argument("--qo", required=True)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--format", choices=("json", "dot"), default="json")

    ve = sub.add_parser("verify", help="run a theorem check and report")
    vesub = ve.add_subparsers(dest="sub", required=True)
    for name in ("two-forms", "containment", "xywz"):
        p = vesub.add_parser(name)
        p.add_argument("--qo", required=True)
        p.add_argument("--maxlen", type=int, default=4)
        if name == "containment":
            p.add_argument("--alpha", type=int, default=1)
    p = vesub.add_parser("reflect")
    p.add_argument("--qo", required=True)
    p.add_argument("--alpha", type=int, default=1)
    p = vesub.add_parser("higman-dp")
    p.add_argument("--max-atoms", type=int, default=3)
    p.add_argument("--maxlen", type=int, default=4)
    p = vesub.add_parser("axioms")
    p.add_argument("--monoid", required=True)
    return top


def parse_args(argv=None) -> RunConfig:
    ns = _build_parser().parse_args(argv)
    max_members = ns.max_members
    if max_members is None and os.environ.get("IDEALFORGE_MAX_MEMBERS"):
        max_members = int(os.environ["IDEALFORGE_MAX_MEMBERS"])
    command = (ns.cmd,) if getattr(ns, "sub", None) is None else (ns.cmd, ns.sub)
    paths = tuple(
        p
        for p in (
            getattr(ns, "path", None),
            getattr(ns, "qo", None),
            getattr(ns, "monoid", None),
            getattr(ns, "alphabet", None),
        )
        if p
    )
    return RunConfig(
        command=command,
        paths=paths,
        alpha=getattr(ns, "alpha", 1),
        maxlen=getattr(ns, "maxlen", 4),
        kind=getattr(ns, "kind", "ihat"),
        fmt=getattr(ns, "format", "json"),
        max_members=max_members,
        seed=ns.seed,
        lhs=getattr(ns, "lhs", ""),
        rhs=getattr(ns, "rhs", ""),
        element=getattr(ns, "element", None),
        max_atoms=getattr(ns, "max_atoms", 3),
    )


def main(argv=None) -> int:
    try:
        config = parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2
    try:
        code, out = dispatch(config)
    except (IdealforgeError, OSError, ValueError, KeyError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Commands compute the generating function both ways, dump fixed-point and
tangent data, expand the refined characters, and verify every identity in
scope; `acceptance` reruns the whole verification grid and diffs the
shipped golden fixtures.

Exit codes: 0 success or verified equality, 1 verification discrepancy,
2 usage error, 3 internal assertion failure.
"""

import argparse
import json
import os
import random
import sys
from importlib import resources

from . import characters, closed_form, localization, partitions, series
from .series import SeriesError

ACCEPTANCE_RANKS = ((1, 1), (2, 1), (1, 1, 1), (2, 2, 1), (2, 1, 1))
ACCEPTANCE_BLOCKS = (((2,), (1,)), ((1, 1), (1, 2)),
                     ((2, 1), (1, 2)), ((1, 2), (1, 2)))
ACCEPTANCE_APPB = ((1, 1), (1, 1, 1), (2, 2, 1), (2, 1, 1, 1))


def _csv_ints(text):
    return tuple(int(p) for p in text.split(","))


def parse_args(argv=None):
    ap = argparse.ArgumentParser(
        prog="laumon",
        description="exact generating functions, characters, and identity "
                    "checks for affine Laumon spaces")
    sub = ap.add_subparsers(dest="command", required=True, metavar="command")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json",
                        help="output format (default json)")
    common.add_argument("--threads", type=int, default=None,
                        help="parallelism budget (default: cpu count; "
                             "LAUMON_THREADS overrides)")
    common.add_argument("--out", default=None, metavar="PATH",
                        help="write output to a file instead of stdout")

    ranks = argparse.ArgumentParser(add_help=False)
    ranks.add_argument("--ranks", type=_csv_ints, required=True,
                       metavar="R0,R1,..", help="rank vector, e.g. 2,1")

    blocks = argparse.ArgumentParser(add_help=False)
    blocks.add_argument("--m", type=_csv_ints, required=True,
                        metavar="M1,..", help="block multiplicities")
    blocks.add_argument("--s", type=_csv_ints, required=True,
                        metavar="S1,..", help="block labels, strictly increasing")

    def order(p, default):
        p.add_argument("--max-order", type=int, default=default,
                       dest="max_order", metavar="N",
                       help="truncation order (default %d)" % default)

    p = sub.add_parser("zr-brute", parents=[common, ranks],
                       help="generating function by fixed-point localization")
    order(p, 4)
    p = sub.add_parser("zr-closed", parents=[common, ranks],
                       help="generating function as a qtilde product")
    order(p, 4)
    p = sub.add_parser("zr-u", parents=[common, ranks],
                       help="generating function as a u-variable product")
    order(p, 4)
    p = sub.add_parser("verify-thm", parents=[common, ranks],
                       help="check the qtilde product against localization")
    order(p, 4)
    p = sub.add_parser("verify-prop34", parents=[common, ranks],
                       help="check the u-variable product against the qtilde one")
    order(p, 4)
    p = sub.add_parser("verify-wz", parents=[common, blocks],
                       help="check the W-character factorization of Z")
    order(p, 4)
    p = sub.add_parser("verify-appendixA", parents=[common],
                       help="box-count bijections over a partition grid")
    order(p, 12)
    p = sub.add_parser("verify-appendixB", parents=[common, ranks],
                       help="off-diagonal product rearrangement chain")
    order(p, 4)
    p = sub.add_parser("verify-lemma32", parents=[common],
                       help="colored partition-sum identity over a grid")
    order(p, 6)
    for name, help_text in (("fixed-points", "list fixed points of one component"),
                            ("morse", "Morse indices, both ways, plus the "
                                      "Poincare polynomial"),
                            ("tangent", "equivariant tangent characters")):
        p = sub.add_parser(name, parents=[common, ranks], help=help_text)
        p.add_argument("--n", type=_csv_ints, required=True,
                       metavar="N0,N1,..", help="occupation vector")
    p = sub.add_parser("characters", parents=[common, blocks],
                       help="refined character blocks with factor lists")
    order(p, 4)
    sub.add_parser("spin", parents=[common, blocks],
                   help="block spin decomposition and free-field counts")
    p = sub.add_parser("verma-denominator", parents=[common],
                       help="affine Verma denominator in (z, v) variables")
    p.add_argument("--size", type=int, required=True, metavar="N",
                   help="number of v variables")
    order(p, 4)
    p.add_argument("--v-cap", type=int, default=4, dest="v_cap", metavar="C",
                   help="cap on |v exponent| (default 4)")
    sub.add_parser("acceptance", parents=[common],
                   help="run the full acceptance grid and diff golden fixtures")

    cfg = ap.parse_args(argv)
    env = os.environ.get("LAUMON_THREADS")
    if env is not None:
        try:
            cfg.threads = int(env)
        except ValueError:
            ap.error("LAUMON_THREADS must be an integer")
    if cfg.threads is None:
        cfg.threads = os.cpu_count() or 1
    if cfg.threads < 1:
        ap.error("--threads must be >= 1")
    return cfg


def _warn_ranks(r):
    if 0 in r:
        print("warning: rank vector %s contains a zero entry, outside the "
              "usual assumption that every rank is positive" % (list(r),),
              file=sys.stderr)


def _series_out(s):
    return 0, series.to_json_dict(s), series.render_text(s)


def _verify_text(title, rep):
    lines = ["%s: %s" % (title, "PASS" if rep["equal"] else "FAIL")]
    for c in rep.get("checks", ()):
        tag = c.get("name")
        if tag is None:
            tag = "a=%s ell=%s" % (c.get("a"), c.get("ell"))
        lines.append("  %s: %s" % (tag, "PASS" if c["equal"] else "FAIL"))
        if not c["equal"] and "first_diff" in c:
            lines.append("    first diff: %s" % json.dumps(c["first_diff"]))
    if not rep["equal"] and "first_diff" in rep:
        lines.append("  first diff: %s" % json.dumps(rep["first_diff"]))
    if rep.get("brute_checked"):
        lines.append("  localization cross-check: %s"
                     % ("PASS" if rep.get("brute_equal") else "FAIL"))
    if "checked" in rep:
        lines.append("  cases checked: %d" % rep["checked"])
    return lines


def _verify_out(title, rep):
    return (0 if rep["equal"] else 1), rep, "\n".join(_verify_text(title, rep))


def _h_zr_brute(cfg):
    r = localization.check_ranks(cfg.ranks)
    _warn_ranks(r)
    return _series_out(localization.brute_force_Z(r, cfg.max_order,
                                                  threads=cfg.threads))


def _h_zr_closed(cfg):
    r = localization.check_ranks(cfg.ranks)
    _warn_ranks(r)
    return _series_out(closed_form.theorem_Z(r, cfg.max_order))


def _h_zr_u(cfg):
    r = localization.check_ranks(cfg.ranks)
    _warn_ranks(r)
    return _series_out(closed_form.theorem_Z_u(r, cfg.max_order))


def _h_verify_thm(cfg):
    r = localization.check_ranks(cfg.ranks)
    _warn_ranks(r)
    rep = closed_form.verify_theorem_Z(r, cfg.max_order, threads=cfg.threads)
    return _verify_out("product form vs localization", rep)


def _h_verify_prop34(cfg):
    r = localization.check_ranks(cfg.ranks)
    _warn_ranks(r)
    rep = closed_form.verify_change_of_variables(r, cfg.max_order)
    return _verify_out("u-variable vs qtilde product", rep)


def _h_verify_wz(cfg):
    b = characters.BlockData(cfg.m, cfg.s)
    rep = characters.verify_WZ(b, cfg.max_order, threads=cfg.threads)
    return _verify_out("W-character factorization", rep)


def appendixA_report(max_size):
    """Check both box-count bijections for every partition of size up to
    max_size, ell in {2,3,4,5}, and every admissible residue."""
    failures = []
    checked = 0
    for ell in (2, 3, 4, 5):
        for n in range(max_size + 1):
            for mu in partitions.enumerate_partitions(n):
                for c in range(-ell + 1, ell):
                    checked += 1
                    g1 = partitions.count_N1_geq(mu, c, ell)
                    g2 = partitions.count_N2_geq(mu, c, ell)
                    gt = partitions.count_N1_gt(mu, c, ell)
                    want_gt = g2 - (mu.col if c == 0 else 0)
                    if g1 != g2 or gt != want_gt:
                        failures.append({"mu": mu.to_list(), "ell": ell,
                                         "c": c, "n1_geq": g1, "n2_geq": g2,
                                         "n1_gt": gt})
    return {"equal": not failures, "checked": checked,
            "failures": failures[:10]}


def _h_verify_appendixA(cfg):
    rep = appendixA_report(cfg.max_order)
    return _verify_out("box-count bijections", rep)


def _h_verify_appendixB(cfg):
    r = localization.check_ranks(cfg.ranks)
    _warn_ranks(r)
    rep = closed_form.verify_appendixB(r, cfg.max_order)
    return _verify_out("off-diagonal rearrangement chain", rep)


def lemma32_report(n_max):
    checks = []
    for ell in (2, 3, 4):
        for a in range(ell):
            rep = closed_form.verify_partition_identity(a, ell, n_max)
            checks.append(dict(rep, a=a, ell=ell))
    return {"equal": all(c["equal"] for c in checks), "checks": checks}


def _h_verify_lemma32(cfg):
    rep = lemma32_report(cfg.max_order)
    return _verify_out("colored partition-sum identity", rep)


def _h_fixed_points(cfg):
    r = localization.check_ranks(cfg.ranks)
    _warn_ranks(r)
    n = localization.check_occupation(cfg.n, len(r))
    fps = localization.enumerate_fixed_points(r, n)
    entries = [{"mus": [mu.to_list() for mu in fp.mus],
                "morse": localization.fixed_point_morse_index(fp, r)}
               for fp in fps]
    payload = {"r": list(r), "n": list(n), "fixed_points": entries}
    lines = ["%d fixed points" % len(entries)]
    lines += ["mus=%s morse=%d" % (json.dumps(e["mus"]), e["morse"])
              for e in entries]
    return 0, payload, "\n".join(lines)


def _h_morse(cfg):
    r = localization.check_ranks(cfg.ranks)
    _warn_ranks(r)
    n = localization.check_occupation(cfg.n, len(r))
    fps = localization.enumerate_fixed_points(r, n)
    entries = []
    agree = True
    for fp in fps:
        wf = localization.fixed_point_morse_index(fp, r)
        wo = localization.morse_index_oracle(fp, r)
        agree = agree and wf == wo
        entries.append({"mus": [mu.to_list() for mu in fp.mus],
                        "formula": wf, "oracle": wo})
    poincare = localization.poincare_polynomial(r, n)
    payload = {"r": list(r), "n": list(n), "fixed_points": entries,
               "poincare": {str(e): c for e, c in poincare.items()},
               "agree": agree}
    lines = ["formula vs oracle: %s" % ("agree" if agree else "DISAGREE")]
    lines += ["mus=%s formula=%d oracle=%d"
              % (json.dumps(e["mus"]), e["formula"], e["oracle"])
              for e in entries]
    lines.append("poincare: " + " + ".join(
        "%d*y^%d" % (c, e) if e else str(c) for e, c in poincare.items()))
    return 0, payload, "\n".join(lines)


def _h_tangent(cfg):
    r = localization.check_ranks(cfg.ranks)
    _warn_ranks(r)
    n = localization.check_occupation(cfg.n, len(r))
    ell = len(r)
    entries = []
    for fp in localization.enumerate_fixed_points(r, n):
        tc = localization.tangent_character(fp, r)
        pairs = []
        for e in tc:
            terms = [{"t1": k[0], "t2": k[1], "omega": k[2], "coeff": c}
                     for k, c in sorted(e.terms.items())]
            pairs.append({"alpha": e.sector[0], "beta": e.sector[1],
                          "terms": terms})
        inv = localization.tangent_count(localization.invariant_part(tc, ell))
        entries.append({"mus": [mu.to_list() for mu in fp.mus],
                        "pairs": pairs,
                        "total_terms": localization.tangent_count(tc),
                        "invariant_terms": inv})
    payload = {"r": list(r), "n": list(n), "fixed_points": entries}
    lines = []
    for e in entries:
        lines.append("mus=%s total=%d invariant=%d"
                     % (json.dumps(e["mus"]), e["total_terms"],
                        e["invariant_terms"]))
    return 0, payload, "\n".join(lines) if lines else "no fixed points"


def _h_characters(cfg):
    b = characters.BlockData(cfg.m, cfg.s)
    n_max = cfg.max_order
    entries = {}

    def put(key, factors, ser):
        entries[key] = {"factors": [characters.render_factor(f) for f in factors],
                        "series": series.to_json_dict(ser)}

    for i in range(1, b.L + 1):
        put("X_%d" % i, characters.x_i_factors(b, i), characters.X_i(b, i, n_max))
    for i in range(1, b.L + 1):
        for j in range(i + 1, b.L + 1):
            put("X_%d_%d" % (i, j), characters.x_ij_factors(b, i, j),
                characters.X_ij(b, i, j, n_max))
            put("B_%d_%d" % (i, j), characters.b_character_factors(b, i, j),
                characters.B_character(b, i, j, n_max))
            put("betagamma_%d_%d" % (i, j), characters.betagamma_factors(b, i, j),
                characters.betagamma_refined(b, i, j, n_max))
    put("w_refined_verma", characters.w_refined_verma_factors(b),
        characters.w_refined_verma(b, n_max))
    payload = {"m": list(b.m), "s": list(b.s),
               "ranks": list(characters.rank_vector_from(b)),
               "max_order": n_max, "characters": entries}
    lines = []
    for key, e in entries.items():
        lines.append("%s = %s" % (key, " ".join(e["factors"]) or "1"))
        lines.append("  = %s" % series.render_text(series.from_json_dict(e["series"])))
    return 0, payload, "\n".join(lines)


def _h_spin(cfg):
    b = characters.BlockData(cfg.m, cfg.s)
    ents = characters.spin_decomposition(b)
    total = characters.spin_total_dimension(ents)
    payload = {"m": list(b.m), "s": list(b.s), "N": b.N,
               "entries": [{"pair": list(p), "dim": d, "mult": k}
                           for p, d, k in ents],
               "total_dim": total,
               "free_field_counts": characters.free_field_counts(b)}
    lines = ["pair=%s dim=%d mult=%d" % (list(p), d, k) for p, d, k in ents]
    lines.append("total_dim=%d (N^2=%d)" % (total, b.N ** 2))
    return 0, payload, "\n".join(lines)


def _h_verma(cfg):
    if cfg.size < 1:
        raise ValueError("--size must be >= 1")
    if cfg.v_cap < 0:
        raise ValueError("--v-cap must be >= 0")
    return _series_out(characters.affine_verma_denominator(
        cfg.size, cfg.max_order, cfg.v_cap))


def _load_golden(name):
    try:
        path = resources.files("laumon").joinpath("golden").joinpath(name)
        return json.loads(path.read_text())
    except (FileNotFoundError, OSError, ValueError):
        return None


def golden_names():
    out = [("zr_" + "_".join(str(x) for x in r) + ".json", ("zr", r))
           for r in ACCEPTANCE_RANKS]
    out += [("verma_%d.json" % n, ("verma", n)) for n in (2, 3)]
    return out


def run_acceptance(threads=1):
    """Run the whole acceptance grid; returns a list of result records."""
    results = []

    def add(name, passed, detail):
        results.append({"criterion": name, "passed": bool(passed),
                        "detail": detail})

    closed_cache = {}
    bad = []
    for r in ACCEPTANCE_RANKS:
        closed_cache[r] = closed_form.theorem_Z(r, 4)
        if localization.brute_force_Z(r, 4, threads=threads) != closed_cache[r]:
            bad.append(str(list(r)))
    add("1 product form vs localization", not bad,
        "ranks %s at order 4%s" % (
            [list(r) for r in ACCEPTANCE_RANKS],
            "" if not bad else "; mismatch at " + ", ".join(bad)))

    z = closed_cache[(1, 1)]
    spot1 = {m[0]: c for m, c in z.terms.items() if m[1:] == (1, 1)}
    spot2 = {m[0]: c for m, c in z.terms.items() if m[1:] == (2, 0)}
    ok2 = spot1 == {0: 1, 2: 2} and spot2 == {0: 1}
    add("2 spot coefficients of Z_(1,1)", ok2,
        "q0*q1 -> %s (want {0:1, 2:2}), q0^2 -> %s (want {0:1})"
        % (spot1, spot2))

    bad = [str(list(r)) for r in ACCEPTANCE_RANKS
           if closed_form.theorem_Z_u(r, 4) != closed_cache[r]]
    add("3 u-variable product form", not bad,
        "same grid" + ("" if not bad else "; mismatch at " + ", ".join(bad)))

    ok4 = True
    details = []
    for m, s in ACCEPTANCE_BLOCKS:
        b = characters.BlockData(m, s)
        rep = characters.verify_WZ(b, 4, threads=threads)
        if not rep["equal"]:
            ok4 = False
            details.append("m=%s s=%s" % (list(m), list(s)))
    b1 = characters.BlockData((2,), (1,))
    no_b_factors = not any(
        characters.b_character_factors(b1, i, j)
        for i in range(1, b1.L + 1) for j in range(i + 1, b1.L + 1))
    reduces = (characters.w_refined_verma(b1, 4)
               == closed_form.theorem_Z((1, 1), 4))
    if not (no_b_factors and reduces):
        ok4 = False
        details.append("L=1 reduction")
    add("4 W-character factorization", ok4,
        "4 block shapes at order 4, with localization cross-check"
        + ("" if ok4 else "; failed: " + ", ".join(details)))

    ok5 = True
    ok9 = True
    fp_total = 0
    for r in ACCEPTANCE_RANKS:
        big_r = sum(r)
        ell = len(r)
        inv_by_occ = {}
        for total in range(5):
            for fp in localization.fixed_points_of_size(r, total):
                fp_total += 1
                tc = localization.tangent_character(fp, r)
                if localization.fixed_point_morse_index(fp, r) \
                        != localization.morse_index_oracle(fp, r):
                    ok5 = False
                if localization.tangent_count(tc) != 2 * big_r * total:
                    ok9 = False
                if localization.fixed_point_morse_index(fp, r) < 0:
                    ok9 = False
                inv = localization.tangent_count(
                    localization.invariant_part(tc, ell))
                inv_by_occ.setdefault(fp.occupation(r), set()).add(inv)
        if any(len(v) != 1 for v in inv_by_occ.values()):
            ok9 = False
    add("5 Morse formula vs weight count", ok5,
        "%d fixed points, totals <= 4, criterion-1 ranks" % fp_total)

    repA = appendixA_report(12)
    add("6 box-count bijections", repA["equal"],
        "%d partition/residue cases, sizes <= 12, ell in {2,3,4,5}"
        % repA["checked"])

    bad = []
    for r in ACCEPTANCE_APPB:
        if not closed_form.verify_appendixB(r, 4)["equal"]:
            bad.append(str(list(r)))
    add("7 off-diagonal rearrangement chain", not bad,
        "ranks %s at order 4 (ell=2 vacuous)"
        % [list(r) for r in ACCEPTANCE_APPB]
        + ("" if not bad else "; failed at " + ", ".join(bad)))

    rep8 = lemma32_report(6)
    add("8 colored partition-sum identity", rep8["equal"],
        "all residues, ell in {2,3,4}, X-degree 6")

    add("9 tangent geometry invariants", ok9,
        "raw counts, invariant-count constancy, index positivity "
        "on the criterion-5 grid")

    rng = random.Random(20260823)
    ok_a = True
    ok_b = True
    pairs_checked = 0
    for _ in range(50):
        big_l = rng.randint(1, 4)
        m = tuple(rng.randint(1, 3) for _ in range(big_l))
        s = tuple(sorted(rng.sample(range(1, 7), big_l)))
        b = characters.BlockData(m, s)
        if characters.spin_total_dimension(
                characters.spin_decomposition(b)) != b.N ** 2:
            ok_a = False
        for p in characters.free_field_counts(b)["pairs"]:
            i, j = p["i"], p["j"]
            si, sj = s[i - 1], s[j - 1]
            mm = m[i - 1] * m[j - 1]
            if si % 2 == 1 and sj % 2 == 1:
                pairs_checked += 1
                if (p["direct"]["fermions"] - p["iterated"]["fermions"]
                        != 2 * mm * (sj - si)):
                    ok_b = False
                if p["direct"]["betagamma"] or p["iterated"]["betagamma"]:
                    ok_b = False
    add("10a spin decomposition dimension", ok_a, "50 random block shapes")
    add("10b free-field count difference", ok_b,
        "%d odd-parity pairs among the same shapes" % pairs_checked)

    ok_c = True
    for n in (2, 3):
        if not characters.verify_verma_vs_X1(n, 4, 4)["equal"]:
            ok_c = False
    add("10c Verma denominator vs single-block character", ok_c,
        "N in {2,3}, z-degree 4, v-cap 4, both directions")

    for name, (kind, arg) in golden_names():
        want = _load_golden(name)
        if kind == "zr":
            got = closed_cache[arg]
        else:
            got = characters.affine_verma_denominator(arg, 4, 4)
        passed = want is not None and series.from_json_dict(want) == got
        add("golden %s" % name, passed,
            "fixture match" if passed else
            ("fixture missing" if want is None else "fixture differs"))

    return results


def _h_acceptance(cfg):
    results = run_acceptance(cfg.threads)
    all_passed = all(r["passed"] for r in results)
    payload = {"results": results, "all_passed": all_passed}
    width = max(len(r["criterion"]) for r in results)
    lines = ["%-*s  %s  %s" % (width, r["criterion"],
                               "PASS" if r["passed"] else "FAIL", r["detail"])
             for r in results]
    lines.append("ALL PASS" if all_passed else "FAILURES: %d"
                 % sum(not r["passed"] for r in results))
    return (0 if all_passed else 1), payload, "\n".join(lines)


_HANDLERS = {
    "zr-brute": _h_zr_brute,
    "zr-closed": _h_zr_closed,
    "zr-u": _h_zr_u,
    "verify-thm": _h_verify_thm,
    "verify-prop34": _h_verify_prop34,
    "verify-wz": _h_verify_wz,
    "verify-appendixA": _h_verify_appendixA,
    "verify-appendixB": _h_verify_appendixB,
    "verify-lemma32": _h_verify_lemma32,
    "fixed-points": _h_fixed_points,
    "morse": _h_morse,
    "tangent": _h_tangent,
    "characters": _h_characters,
    "spin": _h_spin,
    "verma-denominator": _h_verma,
    "acceptance": _h_acceptance,
}


def run(cfg):
    code, payload, text = _HANDLERS[cfg.command](cfg)
    if cfg.format == "json":
        body = json.dumps(payload, indent=2) + "\n"
    else:
        body = text + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    return code


def main(argv=None):
    try:
        cfg = parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return run(cfg)
    except ValueError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except SeriesError as e:
        print("internal error: %s" % e, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

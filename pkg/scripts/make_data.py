"""Regenerate the bundled example problems in src/piexp/data from the catalog."""
from itertools import product

from piexp import catalog
from piexp.problem import DATA_DIR, ProblemFile, dump_problem, parse_problem, to_text

OUT = DATA_DIR


def term(coeff, vars_, decor=None):
    t = {"coeff": coeff, "vars": vars_}
    if decor is not None:
        t["decor"] = decor
    return t


def base(name, A, structures=()):
    pf = ProblemFile(name, A.field, A, {}, {}, {}, {})
    data = dump_problem(pf)
    data["structures"] = list(structures)
    return data


def derivations(name, ops, names):
    return {"name": name, "type": "derivation_action",
            "generators": [{"name": n, "matrix": [[str(x) for x in r] for r in m.rows]} for n, m in zip(names, ops)]}


def grading(name, gr):
    return {"name": name, "type": "grading", "moduli": list(gr.moduli),
            "components": [{"label": list(g), "basis": {"indices": [v.index(1) for v in V.basis]}}
                           for g, V in gr.components.items()]}


COMMUTATOR = {"name": "commutator", "n": 2, "terms": [term("1", [1, 2]), term("-1", [2, 1])]}


def write(data):
    parse_problem(data)  # must load cleanly
    (OUT / (data["name"] + ".json")).write_text(to_text(data) + "\n")


def main():
    A = catalog.full_matrix_algebra(2)
    d = base("m2", A)
    d["polynomials"] = [COMMUTATOR,
                        {"name": "standard3", "n": 3,
                         "terms": [term("1", [1, 2, 3]), term("-1", [2, 1, 3]), term("-1", [1, 3, 2]),
                                   term("1", [3, 1, 2]), term("1", [2, 3, 1]), term("-1", [3, 2, 1])]}]
    write(d)

    U = catalog.upper_triangular(2)
    d = base("ut2", U)
    # [x1, x2][x3, x4]
    terms = []
    for s1, (a, b) in ((1, (1, 2)), (-1, (2, 1))):
        for s2, (c, e) in ((1, (3, 4)), (-1, (4, 3))):
            terms.append(term(str(s1 * s2), [a, b, c, e]))
    d["polynomials"] = [COMMUTATOR, {"name": "commutator_product", "n": 4, "terms": terms}]
    write(d)

    A, gr = catalog.m2_z2_grading()
    d = base("m2_z2_graded", A, [grading("z2grading", gr)])
    d["polynomials"] = [
        {"name": "even_commutator", "structure": "z2grading", "n": 2,
         "terms": [term("1", [1, 2], [[0], [0]]), term("-1", [2, 1], [[0], [0]])]},
        {"name": "odd_commutator", "structure": "z2grading", "n": 2,
         "terms": [term("1", [1, 2], [[1], [1]]), term("-1", [2, 1], [[1], [1]])]},
    ]
    write(d)

    A, _ = catalog.m2_z2_action()
    psi = catalog.m2_sign_automorphism()
    d = base("m2_z2_action", A, [{"name": "psi", "type": "group_action",
                                  "generators": [{"name": "psi", "parity": "automorphism",
                                                  "matrix": [[str(x) for x in r] for r in psi.rows]}]}])
    # [x + x^psi, y + y^psi]
    terms = []
    for h1, h2 in product(["1", "psi"], repeat=2):
        terms.append(term("1", [1, 2], [h1, h2]))
        terms.append(term("-1", [2, 1], [h2, h1]))
    d["polynomials"] = [{"name": "symmetric_commutator", "structure": "psi", "n": 2, "terms": terms}]
    write(d)

    A, sl = catalog.m2_sl2_adjoint()
    _, gl = catalog.m2_gl2_adjoint()
    d = base("m2_sl2_adjoint", A, [derivations("sl2", sl.generators, ["e", "f", "h"]),
                                   derivations("gl2", gl.generators, ["e11", "e12", "e21", "e22"])])
    d["polynomials"] = [{"name": "trace_operator", "structure": "gl2", "n": 1,
                         "terms": [term("1", [1], ["e11"]), term("1", [1], ["e22"])]}]
    write(d)

    A, der = catalog.block_associative(2)
    write(base("block_assoc_m2", A, [derivations("sl2", der.generators, ["e", "f", "h"])]))

    L, der = catalog.block_lie(2)
    d = base("block_lie_m2", L, [derivations("sl2", der.generators, ["e", "f", "h"])])
    d["chains"] = [{"name": "levi_over_radical", "pairs": [{"I": "full", "J": "radical"}]}]
    write(d)


if __name__ == "__main__":
    main()

"""Build λ*, totalize it, extend it with selectors, and split it into simplest representations.

    python scripts/decompose_demo.py --algebra right_zero
"""

import argparse
from dataclasses import dataclass

from nplace import algebra
from nplace.determining_pairs import decompose
from nplace.io import point_names
from nplace.representability import check_unitary, extension_of, faithful_representation, totalize, verify_representation

ALGEBRAS = {
    "left_zero": algebra.left_zero,
    "right_zero": algebra.right_zero,
    "one_element": algebra.one_element,
}


@dataclass
class DemoConfig:
    algebra: str = "left_zero"
    cap: int = 10**5


def main(cfg: DemoConfig):
    G = ALGEBRAS[cfg.algebra]()
    R = faithful_representation(G)
    names = point_names(R.carrier)
    print(f"{cfg.algebra}: carrier {[names[x] for x in R.carrier]}")
    for g, f in enumerate(R.assignment):
        print(f"  P({G.label(g)}) defined on {len(f)} points")
    T = totalize(R)
    print(f"totalized: homomorphism={verify_representation(T)[0]}, injective={T.is_injective()}")
    ext = extension_of(R, cap=cfg.cap)
    print(f"unitary extension: {ext.algebra.size} elements, check={check_unitary(ext)}")
    dec = decompose(R, cap=cfg.cap)
    nontrivial = [m for m in dec.members if any(len(f) for f in m.representation.assignment)]
    print(f"decomposition: {len(dec.members)} points, {len(nontrivial)} with nonempty members, "
          f"union equals P: {dec.holds}, all pairs valid: {all(m.report.ok for m in dec.members)}")
    for m in nontrivial[:5]:
        pt = [names[x] for x in m.point]
        sizes = [len(f) for f in m.representation.assignment]
        print(f"  at {pt}: {len(m.pair.E.classes)} classes, |W|={len(m.pair.W)}, member sizes {sizes}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--algebra", choices=sorted(ALGEBRAS), default=DemoConfig.algebra)
    p.add_argument("--cap", type=int, default=DemoConfig.cap)
    main(DemoConfig(**vars(p.parse_args())))

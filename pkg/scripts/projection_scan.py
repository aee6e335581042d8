"""For each representable algebra of a given order, list the relations realised as domain orders.

    python scripts/projection_scan.py --order 2 --n 2
"""

import argparse
from dataclasses import dataclass

from nplace.census import census, make_algebra
from nplace.quasi_order import QuasiOrderInput, all_relations, build_projection_representation, check_projection_system


@dataclass
class ScanConfig:
    order: int = 2
    n: int = 2


def main(cfg: ScanConfig):
    total = realised = 0
    for rec in census(cfg.n, cfg.order, dedup=True):
        if not rec.representable:
            continue
        G = make_algebra(rec.tables)
        good = []
        for chi in all_relations(G.size):
            if chi.is_quasi_order() and check_projection_system(QuasiOrderInput(G, chi)).ok:
                res = build_projection_representation(QuasiOrderInput(G, chi))
                assert res.ok
                good.append(chi)
        total += 1
        realised += len(good)
        print(f"{rec.class_id} tables={[list(map(list, t)) for t in rec.tables]}: "
              f"{len(good)} projection quasi-orders")
        for chi in good:
            print("   ", [tuple(p) for p in chi.labelled(G)])
    print(f"{total} representable classes, {realised} realised quasi-orders")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--order", type=int, default=ScanConfig.order)
    p.add_argument("--n", type=int, default=ScanConfig.n)
    main(ScanConfig(**vars(p.parse_args())))

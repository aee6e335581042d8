"""Classify every (2,n)-semigroup of a small order and cross-check with brute force.

    python scripts/run_census.py --order 3 --n 2 --dedup
"""

import argparse
import collections
import json
import time
from dataclasses import asdict, dataclass

from nplace.census import census, make_algebra, oracle_representable


@dataclass
class CensusConfig:
    order: int = 2
    n: int = 2
    dedup: bool = False
    workers: int = 0
    oracle: bool = True
    oracle_len: int = 4
    out: str | None = None


def main(cfg: CensusConfig):
    t0 = time.perf_counter()
    records = list(census(cfg.n, cfg.order, dedup=cfg.dedup, workers=cfg.workers))
    elapsed = time.perf_counter() - t0
    rep = sum(r.representable for r in records)
    states = collections.Counter(r.state_count for r in records if r.representable)
    print(f"order={cfg.order} n={cfg.n} dedup={cfg.dedup}: {len(records)} algebras, "
          f"{rep} representable, {len(records) - rep} not ({elapsed:.2f}s)")
    print("closure sizes of representable algebras:", dict(sorted(states.items())))
    if cfg.oracle:
        bad = [r.algebra_id for r in records
               if oracle_representable(make_algebra(r.tables), cfg.oracle_len) != r.representable]
        print(f"oracle (sequences up to length {cfg.oracle_len}): {len(bad)} disagreements")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump({"schema": 1, "config": asdict(cfg),
                       "records": [r.as_dict() for r in records]}, fh, indent=1)


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(CensusConfig()).items():
        flag = "--" + name.replace("_", "-")
        if isinstance(default, bool):
            p.add_argument(flag, action=argparse.BooleanOptionalAction, default=default)
        else:
            p.add_argument(flag, type=type(default) if default is not None else str, default=default)
    main(CensusConfig(**vars(p.parse_args())))

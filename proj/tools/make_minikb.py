#!/usr/bin/env python3
"""Generate the bundled mini knowledge base under tests/data/minikb.

Five top classes, three mid classes under each and two leaf classes under
each mid: 50 classes and 45 direct subclass axioms. Every instance is typed
with its most specific class only.

Each leaf owns a few hub entities. A leaf instance points at hubs of its own
leaf; a mid or top instance points at one hub anywhere in its subtree. Hubs
point back at their members and at an anchor of their mid class. The
predicate on instance-to-hub edges is shared by a whole top-level subtree,
and some instances carry an extra edge with a randomly chosen noise
predicate, so predicate usage alone cannot tell sibling classes apart.
"""

import argparse
import pathlib
import random

TOPS = 5
MIDS_PER_TOP = 3
LEAVES_PER_MID = 2
HUBS_PER_LEAF = 3
LEAF_INSTANCES = 120
MID_INSTANCES = 60
TOP_INSTANCES = 100
NOISE_PREDICATES = 6
MISC_ENTITIES = 40
NOISE_RATE = 0.5


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=pathlib.Path,
                        default=pathlib.Path(__file__).resolve().parent.parent
                        / "tests" / "data" / "minikb")
    parser.add_argument("--seed", type=int, default=20)
    args = parser.parse_args()
    rng = random.Random(args.seed)

    types, edges, gold = [], [], []

    def add_instance(name, cls, hubs, predicate):
        types.append((name, cls))
        for hub in hubs:
            edges.append((name, predicate, hub))
            edges.append((hub, "member", name))
        if rng.random() < NOISE_RATE:
            edges.append((name, f"noise{rng.randrange(NOISE_PREDICATES)}",
                          f"misc{rng.randrange(MISC_ENTITIES)}"))

    for t in range(TOPS):
        top = f"Top{t}"
        predicate = f"rel{t}"
        top_hubs = []
        for m in range(MIDS_PER_TOP):
            mid = f"Mid{t}_{m}"
            gold.append((mid, top))
            anchor = f"anchor{t}_{m}"
            mid_hubs = []
            for l in range(LEAVES_PER_MID):
                leaf = f"Leaf{t}_{m}_{l}"
                gold.append((leaf, mid))
                hubs = [f"hub{t}_{m}_{l}_{h}" for h in range(HUBS_PER_LEAF)]
                for hub in hubs:
                    edges.append((hub, "part_of", anchor))
                for i in range(LEAF_INSTANCES):
                    chosen = rng.sample(hubs, rng.randint(1, 2))
                    add_instance(f"{leaf.lower()}_{i}", leaf, chosen, predicate)
                mid_hubs += hubs
            for i in range(MID_INSTANCES):
                add_instance(f"{mid.lower()}_{i}", mid, [rng.choice(mid_hubs)],
                             predicate)
            top_hubs += mid_hubs
        for i in range(TOP_INSTANCES):
            add_instance(f"{top.lower()}_{i}", top, [rng.choice(top_hubs)],
                         predicate)

    args.out.mkdir(parents=True, exist_ok=True)
    with open(args.out / "types.tsv", "w") as f:
        f.writelines(f"{i}\t{c}\n" for i, c in types)
    with open(args.out / "graph.tsv", "w") as f:
        f.writelines(f"{s}\t{p}\t{o}\n" for s, p, o in edges)
    with open(args.out / "gold.tsv", "w") as f:
        f.writelines(f"{a}\t{b}\n" for a, b in gold)


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Convert a GML network to the lapinv edge-list format (one `a b` per line)."""

import argparse
import sys


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("gml", help="input .gml file")
    ap.add_argument("-o", "--output", help="output file (default stdout)")
    ap.add_argument("--label", default="label",
                    help="node attribute used as label (default: label)")
    args = ap.parse_args()

    import networkx as nx

    g = nx.read_gml(args.gml, label=args.label)
    out = open(args.output, "w") if args.output else sys.stdout
    with out:
        out.write(f"# {g.number_of_nodes()} nodes, {g.number_of_edges()} edges\n")
        for a, b in g.edges():
            out.write(f"{str(a).replace(' ', '_')} {str(b).replace(' ', '_')}\n")


if __name__ == "__main__":
    main()

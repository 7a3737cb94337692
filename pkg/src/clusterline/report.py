"""Graph emission: DOT text, CSV edge lists, and rendered figures.

Figures are drawn with matplotlib on the Agg backend so the CLI can run
headless; layout comes from networkx.
"""

from __future__ import annotations

import csv


def _dot_id(label) -> str:
    if isinstance(label, (tuple, list)):
        label = " | ".join(str(x) for x in label)
    return '"' + str(label).replace('"', r'\"') + '"'


def dot_graph(nodes, edges, name="exchange") -> str:
    """Undirected DOT graph; nodes may be label tuples (clusters)."""
    lines = [f"graph {name} {{", "  node [shape=box, fontsize=9];"]
    for nd in nodes:
        lines.append(f"  {_dot_id(nd)};")
    for a, b in edges:
        lines.append(f"  {_dot_id(a)} -- {_dot_id(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_quiver(labels, arrows, name="quiver") -> str:
    """Directed DOT graph from an arrow list."""
    lines = [f"digraph {name} {{", "  node [shape=circle, fontsize=10];"]
    for v in labels:
        lines.append(f"  {_dot_id(v)};")
    for u, v in arrows:
        lines.append(f"  {_dot_id(u)} -> {_dot_id(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_edges_csv(edges, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["source", "target"])
        for a, b in edges:
            w.writerow([" | ".join(a) if isinstance(a, tuple) else a,
                        " | ".join(b) if isinstance(b, tuple) else b])


def render_graph(nodes, edges, path, directed=False, seed=0):
    """Render the graph to an image file (format from the extension)."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    import networkx as nx

    G = nx.DiGraph() if directed else nx.Graph()

    def key(label):
        if isinstance(label, (tuple, list)):
            return "\n".join(str(x) for x in label)
        return str(label)

    for nd in nodes:
        G.add_node(key(nd))
    for a, b in edges:
        G.add_edge(key(a), key(b))
    pos = nx.spring_layout(G, seed=seed)
    fig, ax = plt.subplots(figsize=(9, 9))
    nx.draw_networkx_edges(G, pos, ax=ax, edge_color="#888888",
                           arrows=directed)
    nx.draw_networkx_nodes(G, pos, ax=ax, node_size=220,
                           node_color="#a7c7e7", edgecolors="#444444")
    nx.draw_networkx_labels(G, pos, ax=ax, font_size=5)
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)

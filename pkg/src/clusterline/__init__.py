"""clusterline: exact calculator for the cluster category of a canonical
algebra — sheaf and tube hom/ext calculus, tilting mutation, exchange
graphs, quiver mutation, and the Moebius action on slopes."""

__version__ = "0.1.0"

"""Hom, Ext^1 and tau values over A2 and N3, worked out by hand.

Right modules, P_i = e_i A.  A2 = (1 -> 2): P1 = [1,1] with socle S2, P2 = S2, and
the Auslander-Reiten quiver is S2 -> P1 -> S1.  N3 = (1 -> 2 -> 3, ab = 0): P1 = [1,1,0],
P2 = [0,1,1], P3 = S3; the injectives are S1, P1, P2.
"""

# module names -> (kind, vertex) with vertices counted from 1
A2_MODULES = {"S1": ("S", 1), "S2": ("S", 2), "P1": ("P", 1)}
N3_MODULES = {"S1": ("S", 1), "S2": ("S", 2), "S3": ("S", 3), "P1": ("P", 1), "P2": ("P", 2)}

A2_HOM = {
    ("S1", "S1"): 1, ("S1", "S2"): 0, ("S1", "P1"): 0,
    ("S2", "S1"): 0, ("S2", "S2"): 1, ("S2", "P1"): 1,
    ("P1", "S1"): 1, ("P1", "S2"): 0, ("P1", "P1"): 1,
}
# only the almost split sequence 0 -> S2 -> P1 -> S1 -> 0 is non-split
A2_EXT = {(x, y): 0 for x in A2_MODULES for y in A2_MODULES}
A2_EXT[("S1", "S2")] = 1
A2_TAU = {"S1": "S2", "S2": None, "P1": None}
A2_TAU_INV = {"S2": "S1", "S1": None, "P1": None}

N3_HOM = {
    ("S3", "P2"): 1, ("S2", "P1"): 1, ("P2", "S2"): 1, ("P1", "S1"): 1,
    ("P2", "P1"): 1, ("P1", "P2"): 0, ("S1", "P1"): 0, ("S3", "S2"): 0,
    ("P2", "S3"): 0, ("S2", "S2"): 1,
}
# Ext^1(S1, S3) vanishes here: the relation moves that class to Ext^2
N3_EXT = {
    ("S1", "S2"): 1, ("S2", "S3"): 1, ("S1", "S3"): 0, ("S2", "S1"): 0,
    ("S1", "P2"): 0, ("S2", "P1"): 0, ("P1", "S3"): 0, ("S3", "S1"): 0,
}
N3_TAU = {"S1": "S2", "S2": "S3", "S3": None, "P1": None, "P2": None}
N3_TAU_INV = {"S3": "S2", "S2": "S1", "S1": None}


def build(alg, table):
    from taucluster.fdmodules import projective_module, simple_module

    out = {}
    for name, (kind, v) in table.items():
        out[name] = simple_module(alg, v - 1) if kind == "S" else projective_module(alg, v - 1)
    return out


def fixture_count():
    return sum(len(t) for t in (A2_HOM, A2_EXT, A2_TAU, A2_TAU_INV, N3_HOM, N3_EXT, N3_TAU, N3_TAU_INV))

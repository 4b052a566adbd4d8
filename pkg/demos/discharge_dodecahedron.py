"""Charge bookkeeping on the dodecahedron: every vertex is a 3-vertex, every face a 5-face."""
from packcolor.discharge import audit
from packcolor.gallery import dodecahedron

rep = audit(dodecahedron(), theorem=1)
print("initial", rep.ledger.total_initial(), "final", rep.ledger.total_final())
print("first violated predicate:", rep.violated[0].key, rep.violated[0].witness)

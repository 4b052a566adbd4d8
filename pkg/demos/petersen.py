"""Packing colorings of the Petersen graph under three palettes."""
from packcolor.gallery import petersen
from packcolor.solver import format_coloring, parse_spec, solve

g = petersen()
for text in ("1,2^6", "1,2^5", "1^2,2^2"):
    spec = parse_spec(text)
    res = solve(g, spec)
    print(f"({text}):", "SAT" if res.sat else "UNSAT")
    if res.sat:
        print(format_coloring(g, spec, res.coloring))

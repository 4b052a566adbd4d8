"""Verify one builtin configuration and print its report.

    python demos/verify_builtin.py lemma-3.9
"""
import sys

from packcolor.configs import get_config, verify

name = sys.argv[1] if len(sys.argv) > 1 else "lemma-3.10"
rep = verify(get_config(name))
print(rep.format())
print(f"# {rep.seconds:.1f}s")

"""The 8-vertex extremal graph and its certificate."""
from packcolor.sharpness import sharpness_search

print(sharpness_search().format(), end="")

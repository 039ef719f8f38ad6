"""A finite automaton recognizing the admissible digit words.

Pulling each word's refined set back through the inverse word map gives
a state with a one-letter update rule.  If only finitely many states
appear, the words with nonempty refinement form a regular language and
the system's digit shift is sofic.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from moebius_systems import build_automaton, builtin, sofic_verdict

p3 = builtin("parabolic3")
auto = build_automaton(p3)
print(f"three-parabolic system: {auto.n_states} states, saturated={auto.saturated}")
print(f"states discovered per depth: {auto.growth}")
print()
print(auto.transition_table(p3.alphabet))
print()
report = sofic_verdict(p3, auto)
print("verdict:", report.verdict)
print("product with the subshift automaton:", report.product_states, "states")
print("transition-law residual:", report.transition_residual)

print("\nstarving the search with a state cap:")
capped = build_automaton(p3, state_cap=3)
print(" ", sofic_verdict(p3, capped).verdict)

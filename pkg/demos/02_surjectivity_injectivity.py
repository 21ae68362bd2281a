# %% [markdown]
# # Which mixtures of rules are onto, and which are one-to-one?
#
# A rule word is "bad" when some output block has no preimage. The bad
# words form a regular language, so a distribution is surjective exactly
# when none of its factors is accepted by one DFA.

# %%
from nuca import LocalRule, RuleSet, Distribution
from nuca.debruijn import build_debruijn
from nuca.injectivity import is_distribution_injective
from nuca.surjectivity import forbidden_pattern_dfa, is_distribution_surjective, unreachable_word

rules = RuleSet.of([
    LocalRule.linear("id", 2, [0, 1, 0]),
    LocalRule.linear("shift", 2, [0, 0, 1]),
    LocalRule.linear("xor", 2, [1, 0, 1]),
    LocalRule.linear("zero", 2, [0, 0, 0]),
])
g = build_debruijn(rules)
print(f"DeBruijn graph: {g.n_nodes} vertices, {len(g.edges)} labelled edges")
dfa = forbidden_pattern_dfa(rules)
print(f"minimal DFA for the bad rule words: {dfa.n_states} states")

# %% A single zero cell kills surjectivity; the report names the cell.
theta = Distribution.from_names(rules, ["id"], ["zero"], ["id"])
report = is_distribution_surjective(theta)
print(report.as_dict())

# %% The identity next to a shift loses one letter.
for left, right in (("id", "shift"), ("shift", "id")):
    theta = Distribution.from_names(rules, [left], [], [right])
    surj = is_distribution_surjective(theta)
    inj = is_distribution_injective(theta)
    print(f"^w({left}) ({right})^w: {surj.verdict}, {inj.verdict}")
    if surj.pattern:
        print("   missing output", unreachable_word(rules, surj.pattern), "for", theta.names(surj.pattern))
    if inj.witness:
        x, y = inj.witness
        print("   collision", x.as_dict(), y.as_dict())

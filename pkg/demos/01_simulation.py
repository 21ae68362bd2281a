# %% [markdown]
# # Simulating a non-uniform automaton
#
# Cells may run different local rules. Here the xor rule (Wolfram 90)
# sits in a block of three cells and the identity rule fills both sides.
# Configurations and rule assignments are eventually periodic, so every
# step is computed exactly on the whole line.

# %%
from nuca import Configuration, Distribution, LocalRule, RuleSet, space_time, step

xor = LocalRule.linear("xor", 2, [1, 0, 1])
ident = LocalRule.linear("id", 2, [0, 1, 0])
rules = RuleSet.of([xor, ident])
theta = Distribution.from_names(rules, ["id"], ["xor", "xor", "xor"], ["id"])

# %% A single 1 inside the xor block never leaves cells -1..3.
x = Configuration.single(1, 0)
diagram = space_time(theta, x, -4, 6, 12)
for t, row in enumerate(diagram.rows):
    print(f"{t:3d} " + "".join("#" if a else "." for a in row))

# %% Uniform xor for comparison: the Pascal triangle mod 2.
uniform = Distribution.uniform(rules, "xor")
for t, row in enumerate(space_time(uniform, x, -8, 10, 8).rows):
    print(f"{t:3d} " + "".join("#" if a else "." for a in row))

# %% Periodic backgrounds stay periodic.
y = Configuration((1, 0), (1, 1), (0, 0, 1), -3)
print("x    :", y)
print("H(x) :", step(theta, y))

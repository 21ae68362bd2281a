# %% [markdown]
# # Walls and the equicontinuity/sensitivity split
#
# For linear rules over Z_s a short rule word can act as a wall that
# stops information from crossing. Walls recurring in both periodic tails
# make the automaton equicontinuous; without them it is sensitive.

# %%
import numpy as np

from nuca import Configuration, Distribution, LocalRule, RuleSet
from nuca.dynamics import classify, is_right_wall, propagation_radii
from nuca.simulation import perturbation_cone

rules = RuleSet.of([LocalRule.linear("xor", 2, [1, 0, 1]), LocalRule.linear("id", 2, [0, 1, 0])])
ident = rules.index("id")
print("id is a right-wall:", is_right_wall(rules, [ident]).is_wall)

# %% Uniform xor: the dependence radius grows by one per step.
xor = Distribution.uniform(rules, "xor")
print("radii:", propagation_radii(xor, 0, 10))
print(classify(xor).as_dict())

# %% The xor block between identity walls.
block = Distribution.from_names(rules, ["id"], ["xor"] * 3, ["id"])
print(classify(block, empirical_steps=64).as_dict())
cone = perturbation_cone(block, Configuration.zero(), 1, 64)
touched = np.flatnonzero(cone.masks.any(axis=0)) + cone.a
print("cells ever touched by a flip at 1:", touched.tolist())

"""Two-hypothesis detection from raw documents to the closed-form error bound.

Walks a pair of pure states through the whole binary pipeline: build class
statistics, eigendecompose the weighted density difference, score documents
against the acceptance projector, and compare the achieved average error with
the trace-norm bound at several priors and state angles.
"""

import math

import numpy as np

from qdetect import (
    FeatureVector,
    binary_bayes_cost,
    decide,
    density_from_vector,
    detector_from_densities,
    helstrom_oracle,
    normalize_document,
    score,
    train_binary,
)

# --- a tiny corpus: "ham" lives on features 0/1, "spam" leans on 1/2 --------
ham = [
    FeatureVector(dim=3, entries={0: 3, 1: 1}),
    FeatureVector(dim=3, entries={0: 2}),
    FeatureVector(dim=3, entries={0: 1, 1: 2}),
]
spam = [
    FeatureVector(dim=3, entries={1: 1, 2: 2}),
    FeatureVector(dim=3, entries={2: 4}),
]

model = train_binary(ham, spam, dim=3, labels=("ham", "spam"))
print("trained on", len(ham), "ham /", len(spam), "spam documents")
print("negative-class prior xi =", model.prior_negative, " lambda =", model.lam)
print("extreme eigenvalues: eta =", round(model.eta, 6), " beta =", round(model.beta, 6))
print("acceptance projector:\n", model.projector.round(4))

probe = FeatureVector(dim=3, entries={0: 1, 1: 1})
x = normalize_document(probe)
print("\nprobe document score <x|P|x> =", round(score(model, x), 6))
print("accepted at threshold", model.threshold, "->", decide(model, x))

# --- the projector construction achieves the minimum average error ----------
print("\nangle sweep, equal priors: achieved cost vs the trace-norm bound")
print(f"{'angle':>6}  {'achieved':>10}  {'bound':>10}  {'gap':>9}")
for degrees in (15, 30, 45, 60, 75, 90):
    theta = math.radians(degrees)
    psi0 = np.array([1.0, 0.0])
    psi1 = np.array([math.cos(theta), math.sin(theta)])
    rho0 = density_from_vector(psi0)
    rho1 = density_from_vector(psi1)
    detector = detector_from_densities(rho1, rho0, prior_negative=0.5)
    achieved = binary_bayes_cost(detector, rho1, rho0, 0.5)
    bound = helstrom_oracle(rho1, rho0, 0.5, 0.5)
    print(f"{degrees:>6}  {achieved:>10.6f}  {bound:>10.6f}  {achieved - bound:>9.2e}")

# --- skewed priors shift the acceptance region ------------------------------
print("\n45-degree pair under different negative-class priors")
theta = math.radians(45)
rho0 = density_from_vector(np.array([1.0, 0.0]))
rho1 = density_from_vector(np.array([math.cos(theta), math.sin(theta)]))
for xi in (0.1, 0.3, 0.5, 0.7, 0.9):
    detector = detector_from_densities(rho1, rho0, prior_negative=xi)
    achieved = binary_bayes_cost(detector, rho1, rho0, xi)
    bound = helstrom_oracle(rho1, rho0, 1.0 - xi, xi)
    accept_trace = round(float(np.trace(detector.projector)), 1)
    print(f"  xi={xi:.1f}: cost={achieved:.6f}  bound={bound:.6f}  rank(P)={accept_trace}")

"""Expected counts of models made of transformations only.

Such a model is a linear first-order network: every agent independently moves
between species or vanishes, so the mean counts follow dn/dt = Q^T n.
"""

import numpy as np
from scipy.linalg import expm

from pimlang.core.sites import species_of, state_name
from pimlang.exc import SimulationError
from pimlang.schemas.model import Model, SentenceKind
from pimlang.schemas.trace import TraceTable


def is_transformation_only(model: Model) -> bool:
    return all(s.kind is SentenceKind.TRANSFORMATION for s in model.sentences)


def generator_matrix(model: Model) -> tuple[tuple[str, ...], np.ndarray]:
    species = species_of(model)
    index = {name: i for i, name in enumerate(species)}
    q = np.zeros((len(species), len(species)))
    for sentence in model.sentences:
        source = index[sentence.left.species]
        q[source, source] -= sentence.rate
        if sentence.right is not None:
            q[source, index[sentence.right.species]] += sentence.rate
    return species, q


def closed_form_means(model: Model, times: np.ndarray) -> TraceTable:
    """
    Exact mean counts exp(Q^T t) n0 at `times` for a transformation-only model.

    A single decay `A decays with rate r` gives n0 * exp(-r t).

    Raises:
        SimulationError: If the model has association or dissociation sentences.
    """
    if not is_transformation_only(model):
        raise SimulationError("closed forms exist for transformation-only models")
    species, q = generator_matrix(model)
    start = np.array([model.population(name) for name in species], dtype=float)
    means = np.array([expm(q.T * t) @ start for t in times])
    columns = tuple(state_name(name, 0) for name in species)
    return TraceTable(times=np.asarray(times, dtype=float), columns=columns, counts=means)

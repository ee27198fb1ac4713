"""Deliberate fault injection, used only to show the law suite can fail.

Each name switches off or corrupts one step of the construction:

``drop_factorial``
    the Taylor sum in :func:`weil.lift.lift_map` omits the ``1/alpha!`` factor.
``transpose_tensor_order``
    the basis identification ``W1 (x) W2 <-> W1-coords of W2-elements`` is
    built with the two factors swapped.
``skip_locality_check``
    algebra and morphism construction stop rejecting non-local input.

Never enable these outside tests.
"""

from contextlib import contextmanager

KNOWN = ("drop_factorial", "transpose_tensor_order", "skip_locality_check")

_active = set()


def active(name):
    return name in _active


@contextmanager
def inject(*names):
    for n in names:
        if n not in KNOWN:
            raise ValueError(f"unknown fault {n!r}; choose from {KNOWN}")
    added = [n for n in names if n not in _active]
    _active.update(added)
    try:
        yield
    finally:
        _active.difference_update(added)

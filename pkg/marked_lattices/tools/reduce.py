"""Reduction of autodual lattices to the standard lattice."""

from typing import Any

from marked_lattices.algebra.lattices import named_order
from marked_lattices.algebra.symplectic import is_autodual_for_form, symplectic_reduce
from marked_lattices.core import error_report
from marked_lattices.core.errors import NotAutodualError
from marked_lattices.models import ReduceInput
from marked_lattices.schemas import LatticeDocument


def reduce(params: ReduceInput) -> dict[str, Any]:
    """Reduce a lattice, or decide autoduality for an explicit form.

    With the standard symplectic form the report carries the exact matrix C
    and the verification transcript. With an explicit form only the autodual
    verdict is reported.

    Args:
        params: ReduceInput with the lattice document

    Returns:
        dict with C and its transcript, or an error report (exit code 2 for
        lattices that are not autodual)
    """
    try:
        document = LatticeDocument.model_validate(params.document)
        if document.standard:
            lattice = document.to_lattice()
            reduction = symplectic_reduce(lattice)
            return {"status": "success", "g": lattice.g, **reduction.to_document()}

        marking = document.to_marking()
        order = named_order(document.order) if document.order else None
        form = document.to_form()
        if not is_autodual_for_form(marking, form, order):
            raise NotAutodualError("lattice is not autodual for the given form")
        return {
            "status": "success",
            "autodual": True,
            "form": "hermitian" if form.hermitian else "anti-hermitian",
        }
    except Exception as e:
        return error_report(e, "reduce")

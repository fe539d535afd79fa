"""
ncbvkit - noncommutative Batalin-Vilkovisky toolkit
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

ncbvkit is an exact-arithmetic kernel for the noncommutative
Batalin-Vilkovisky calculus on spaces of cyclic words, together with the
supermatrix realizations over gl(N|N) and q(N) that make every identity of
the calculus checkable by direct expansion.

ncbvkit covers:

- Z/2-graded spaces with even or odd graded-symmetric pairings, Koszul signs
- The space F of products of cyclic words, in the odd-pairing flavor and in
  the parity-shifted even-pairing flavor
- The BV operator, the odd bracket and quantum master equation residuals
- Trace polynomials over gl(N|N) (supertrace) and q(N) (odd trace), the
  matrix BV Laplacian and the correspondence between both sides
- The odd Fourier transform onto differential forms and the de Rham
  differential
- Modular operad contractions on permutations and their tensor realization
- Morita and super-Morita transport of solutions
- Hamiltonians of the adjoint action, Cartan calculus and equivariantly
  closed forms

All arithmetic is done over the rationals with :class:`fractions.Fraction`.

Overview
~~~~~~~~

ncbvkit is used either as a library or through the ``ncbv`` command line
tool, which runs the verification suites and writes JSON reports.

Usage example
~~~~~~~~~~~~~
Check that the combinatorial BV operator matches the matrix Laplacian:

.. code-block:: python

    from ncbvkit.gradedcore import GradedSpace, PairingForm
    from ncbvkit.cyclicspace import FSpace, FElement, ODD_PAIRING
    from ncbvkit.tracealgebra import TraceAlgebra
    from ncbvkit.matrixrealization import MatrixModel

    space = GradedSpace([("x", 0), ("px", 1)])
    pairing = PairingForm.from_rows(space, 1, [[0, 1], [1, 0]])
    fspace = FSpace(space, ODD_PAIRING)

    element = FElement.from_words(fspace, [["x", "px", "x", "px"]])
    model = MatrixModel(fspace, pairing, TraceAlgebra.gl(4))
    result = model.correspondence_check(element)
    print(result.ok)

Command line
~~~~~~~~~~~~
.. code-block:: bash

    ncbv verify correspondence --n 4 --N 4
    ncbv expand input.json "(a b)" --N 1 --algebra gl
"""

__version__ = "0.3.1"

# The GIT commit ID and build date are filled in by the release build
COMMIT_ID = 'N/A'
BUILD_DATE = 'N/A'

import logging
logging.getLogger(__name__).addHandler(logging.NullHandler())

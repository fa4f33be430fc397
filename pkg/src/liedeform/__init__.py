"""Exact Chevalley-Eilenberg cohomology, deformation verdicts and Newton
continuation for finite-dimensional Lie algebras over the rationals.

Layers, from the ground up:

- ``exactlin``: rational linear algebra (rref, rank, kernels, quotients).
- ``cochains``: alternating multilinear maps in flat coordinates.
- ``algebras``: bracket candidates, Lie algebras, homomorphisms, subalgebra
  witnesses, the three coefficient systems, and the builtin catalog.
- ``cecomplex``: differentials, cohomology reports, induced maps, the long
  exact sequence of a subalgebra.
- ``kuranishi``: Jacobiator/curvature expansions and the three obstruction
  classes.
- ``verdicts``: rigidity/stability conclusions with evidence.
- ``deformlab``: floating-point Newton orbit recovery, zero continuation and
  finite-difference checks.
- ``documents`` / ``cli``: JSON documents and the command line.
"""

from .algebras import (BracketCandidate, Homomorphism, LieAlgebra,
                       SubalgebraWitness, ValidationError, abelian,
                       adjoint_rep, catalog_algebra, catalog_names, curvature,
                       hom_preset, hom_preset_names, pullback_rep,
                       quotient_rep, sub_preset, sub_preset_names,
                       subalgebra_defect, subalgebra_witness, validate_bracket,
                       validate_homomorphism)
from .cecomplex import (CEComplex, CohomologyReport, CohomologyUndefinedError,
                        adjoint_cohomology, cohomology, euler_characteristic,
                        induced_map_on_h, les_subalgebra, pullback_cochain_map)
from .cochains import AltMap
from .deformlab import (ChartError, ContinuationResult, FloatBracket,
                        InputDefectError, NewtonConfig, PreconditionError,
                        RecoveryResult, act_on_bracket, continue_hom,
                        continue_sub, curve_cocycle_check, recover_bracket_orbit,
                        recover_hom_orbit, recover_sub_orbit, run_experiment,
                        vertical_derivative_fd_check)
from .documents import (MalformedDocumentError, parse_algebra_doc,
                        parse_experiment_doc, parse_hom_doc, parse_sub_doc,
                        resolve_algebra, resolve_hom, resolve_sub)
from .kuranishi import (NonCocycleError, ObstructionClass, Splitting,
                        curvature_expansion_check, jacobiator,
                        jacobiator_expansion_check, kuranishi_bracket,
                        kuranishi_hom, kuranishi_sub, omega_sigma,
                        splitting_independence_check, standard_splitting)
from .verdicts import (KuranishiModelDims, Verdict, bracket_rigidity,
                       bracket_smoothness, hom_aut_rigidity,
                       hom_infinitesimal_stability_indicator, hom_rigidity,
                       hom_stability, kuranishi_model_dims, sub_rigidity,
                       sub_stability)

__version__ = "0.1.0"

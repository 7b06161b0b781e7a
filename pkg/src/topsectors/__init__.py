"""Topological sectors of sigma models by combinatorial homotopy.

The package classifies based and free homotopy classes of maps from a
reduced CW complex into a target modeled by a crossed module (dimension 2)
or, for the 2-sphere target, a crossed square (dimension 3), reducing every
question to exact integer linear algebra.  Twisted cellular cohomology and
the cup-product formula for sphere targets serve as independent oracles.

Typical use::

    from topsectors import catalog, target_catalog, classify_free
    res = classify_free(catalog("torus2"), target_catalog("rp2"))
    for sector in res.sectors:
        print(sector.phi1, sector.based_group)
"""

from .classify2d import (
    Dim1Classification,
    SectorClassification,
    SectorResult,
    TargetData,
    UnsupportedTargetError,
    XModHom,
    classify_based,
    classify_dim1,
    classify_free,
    hom_lattice,
    homotopy_sublattice,
    pi1_sectors,
    wedge_formula,
)
from .cohomology import (
    CochainComplex,
    CoefficientModule,
    build_complex,
    special_case_classify,
    twisted_second_cohomology,
)
from .complexes import (
    CWComplex,
    ComplexError,
    TriadLetter,
    catalog,
    load,
    loads,
    save,
    saves,
    validate_triad,
)
from .dim3 import (
    CLetter,
    CupData,
    CylinderPreset,
    S2CrossedSquareTarget,
    TensorLetter,
    XSqHom,
    classify_s2,
    crossed_square_report,
    cup_preset,
    cylinder_preset,
    evaluate_L,
    pontrjagin_classify,
    pontrjagin_sector_group,
    sector_group_s2,
    xsq_hom_lattice,
)
from .fingrp import FiniteGroup, cyclic, direct_product, symmetric
from .words import (
    Alphabet,
    AlphabetError,
    GroupRingElement,
    Word,
    WordSyntaxError,
    fox_derivative,
)
from .xmod import (
    FiniteCrossedModule,
    HoangData,
    ModuleXMod,
    XModError,
    derivation_image,
    free_pre_crossed_boundary,
    from_strict_2group,
    hoang_data,
    target_catalog,
    to_strict_2group,
    validate,
)
from .zlinalg import (
    AbelianGroup,
    AffineLattice,
    IntMatrix,
    Lattice,
    LatticeQuotient,
    SmithDecomposition,
    SublatticeError,
    quotient,
    quotient_with_representatives,
    smith_normal_form,
    solve,
)

__all__ = [
    "AbelianGroup",
    "AffineLattice",
    "Alphabet",
    "AlphabetError",
    "CLetter",
    "CWComplex",
    "CochainComplex",
    "CoefficientModule",
    "ComplexError",
    "CupData",
    "CylinderPreset",
    "Dim1Classification",
    "FiniteCrossedModule",
    "FiniteGroup",
    "GroupRingElement",
    "HoangData",
    "IntMatrix",
    "Lattice",
    "LatticeQuotient",
    "ModuleXMod",
    "S2CrossedSquareTarget",
    "SectorClassification",
    "SectorResult",
    "SmithDecomposition",
    "SublatticeError",
    "TargetData",
    "TensorLetter",
    "TriadLetter",
    "UnsupportedTargetError",
    "Word",
    "WordSyntaxError",
    "XModError",
    "XModHom",
    "XSqHom",
    "build_complex",
    "catalog",
    "classify_based",
    "classify_dim1",
    "classify_free",
    "classify_s2",
    "crossed_square_report",
    "cup_preset",
    "cyclic",
    "cylinder_preset",
    "derivation_image",
    "direct_product",
    "evaluate_L",
    "fox_derivative",
    "free_pre_crossed_boundary",
    "from_strict_2group",
    "hoang_data",
    "hom_lattice",
    "homotopy_sublattice",
    "load",
    "loads",
    "pi1_sectors",
    "pontrjagin_classify",
    "pontrjagin_sector_group",
    "quotient",
    "quotient_with_representatives",
    "save",
    "saves",
    "sector_group_s2",
    "smith_normal_form",
    "solve",
    "special_case_classify",
    "symmetric",
    "target_catalog",
    "to_strict_2group",
    "twisted_second_cohomology",
    "validate",
    "validate_triad",
    "wedge_formula",
    "xsq_hom_lattice",
]

__version__ = "0.1.0"

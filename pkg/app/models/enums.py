"""
Base enums and types used across models
"""
import enum


class RootType(str, enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    G = "G"


class LPStatus(str, enum.Enum):
    OPTIMAL = "OPTIMAL"
    INFEASIBLE = "INFEASIBLE"
    UNBOUNDED = "UNBOUNDED"


class CharFnKind(str, enum.Enum):
    TAU = "tau"
    TAU_HAT = "tau_hat"
    PHI3 = "phi3"
    PHI2 = "phi2"
    GAMMA_PR = "gamma_PR"
    GAMMA_M = "gamma_M"
    DELTA = "delta"
    GAMMA_M_KAPPA = "gamma_M_kappa"


class ComputeCommand(str, enum.Enum):
    VOLUME = "volume"
    RADICIAL = "radicial"
    OMEGA = "omega"
    HULL = "hull"


class CertificateCase(str, enum.Enum):
    Q_MAP = "q-map"
    Q_MAP_BALANCED = "q-map-balanced"
    Q_MAP_SHIFTED = "q-map-shifted"
    FIXED_POINT_DICHOTOMY = "fixed-point-dichotomy"
    FIXED_POINT_KERNEL = "fixed-point-kernel"
    SIGMA_SPLIT = "sigma-split"


class IdentityId(str, enum.Enum):
    """Catalogue identifiers accepted by the suite runner"""
    # root system / parabolic / weyl structure
    ROOT_SYSTEM = "root-system"
    POSITIVITY = "positivity"
    ANGLES = "angles"
    BINOMIAL = "binomial"
    INVERSIONS = "inversions"
    COSETS = "cosets"
    WEYL_SETS = "weyl-sets"
    FACETS = "facets"
    REGROUPING = "regrouping"
    WEYL_LEVI = "weyl-levi"
    FAMILIES = "families"
    # cones
    TAU_LE_TAU_HAT = "tau-le-tau-hat"
    LANGLANDS = "langlands"
    PHI_PARTITION = "phi-partition"
    BOUND_C = "bound-c"
    GAMMA_PARTITION = "gamma-partition"
    GAMMA_DUAL = "gamma-dual"
    GAMMA_CONVOLUTION = "gamma-convolution"
    BOUND_GAMMA = "bound-gamma"
    FACET_PARTITION = "facet-partition"
    GAMMA_M_DELTA = "gamma-m-delta"
    GAMMA_M_PARTITION = "gamma-m-partition"
    GAMMA_M_CONVOLUTION = "gamma-m-convolution"
    KAPPA_INDEPENDENCE = "kappa-independence"
    GAMMA_M_PHI = "gamma-m-phi"
    GAMMA_M_KAPPA = "gamma-m-kappa"
    LEVI_MONOTONE = "levi-monotone"
    # laplace / (G,M)-families
    EPSILON_SIGN = "epsilon-sign"
    GAMMA_POLY = "gamma-poly"
    CONE_LAPLACE = "cone-laplace"
    GAMMA_M_POLY = "gamma-m-poly"
    GM_DECOMPOSITION = "gm-decomposition"
    PRODUCT_FORMULA = "product-formula"
    RADICIAL = "radicial"
    RADICIAL_DIFFERENTIAL = "radicial-differential"
    OMEGA = "omega"
    # twisted
    TWISTED_BASES = "twisted-bases"
    PLUS_MINUS = "plus-minus"
    TWISTED_WEYL = "twisted-weyl"
    TWISTED_HULL = "twisted-hull"
    TWISTED_GAMMA_PARTITION = "twisted-gamma-partition"
    TWISTED_GAMMA_DUAL = "twisted-gamma-dual"
    TWISTED_GAMMA_CONVOLUTION = "twisted-gamma-convolution"
    TWISTED_GAMMA_M_CONVOLUTION = "twisted-gamma-m-convolution"
    TWISTED_PRODUCT_FORMULA = "twisted-product-formula"
    SIGMA_TILDE = "sigma-tilde"
    SIGMA_PARTITION = "sigma-partition"
    SIGMA_DISJOINT = "sigma-disjoint"
    ETA_TILDE = "eta-tilde"
    CERTIFICATES = "certificates"

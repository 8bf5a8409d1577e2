"""
All schema imports for easy access
"""
from .suite import SuiteConfig, IdentityReport, SystemReport, ReportHeader, Report, CatalogueItem
from .compute import (
    OrthogonalFamilyFile, PolynomialTerm, PolynomialOut, ExpValueOut,
    VolumeRequest, VolumeResponse, RadicialRequest, RadicialResponse, DifferentialOut,
    OmegaRequest, OmegaResponse, HullRequest, HullResponse,
)
from .certificates import CertificateOut, CertificateRequest

__all__ = [
    # Suite schemas
    'SuiteConfig', 'IdentityReport', 'SystemReport', 'ReportHeader', 'Report', 'CatalogueItem',
    # Compute schemas
    'OrthogonalFamilyFile', 'PolynomialTerm', 'PolynomialOut', 'ExpValueOut',
    'VolumeRequest', 'VolumeResponse', 'RadicialRequest', 'RadicialResponse', 'DifferentialOut',
    'OmegaRequest', 'OmegaResponse', 'HullRequest', 'HullResponse',
    # Certificate schemas
    'CertificateOut', 'CertificateRequest',
]

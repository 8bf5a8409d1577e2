"""
Base enums shared by the geometry library, the schemas and the CLI
"""
from .enums import RootType, LPStatus, CharFnKind, ComputeCommand, CertificateCase, IdentityId

__all__ = ['RootType', 'LPStatus', 'CharFnKind', 'ComputeCommand', 'CertificateCase', 'IdentityId']

"""Besov Lab: embedding oracle, discrete Besov quasi-norms and witness experiments"""

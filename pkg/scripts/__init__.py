"""Init file for scripts"""

# Trihomology Toolkit - Main Package

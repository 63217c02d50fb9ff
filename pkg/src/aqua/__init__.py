"""Water-body cadastre toolkit for Landsat-5 TM scenes.

Submodules follow the processing chain: ingest (packages, MTL, rasters),
calibration (ND -> radiance -> surface reflectance), indices (NDVI/NDWI/
MNDWI), segmentation (seed thresholding + morphology), measurement
(area/perimeter/centroid, pixel->UTM), geodesy (UTM->lat/lon, admin
lookup), cadastre (registry, timelines, KML), render (composites and
overlays), plus the cli and service front ends.
"""

__version__ = "0.1.0"

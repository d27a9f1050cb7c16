from cevians.conic.carnot import Conic, SixFeet, carnot_product, fit_conic, six_feet

__all__ = ["Conic", "SixFeet", "carnot_product", "fit_conic", "six_feet"]

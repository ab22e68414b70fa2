//! Small shared helpers: exact-number serialization and primality.

use num::{BigInt, BigRational};
use serde::Serializer;

/// Serialize an exact rational as a "num/den" string (or plain integer
/// string when the denominator is 1). Reports never emit floats.
pub fn ser_ratio<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_string(r))
}

pub fn ratio_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serialize an arbitrary-precision integer as a decimal string.
pub fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Trial-division primality; the generator scale never needs more.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    #[test]
    fn ratio_strings() {
        let r = BigRational::new(BigInt::from_i64(7).unwrap(), BigInt::from_i64(2).unwrap());
        assert_eq!(ratio_string(&r), "7/2");
        let i = BigRational::from_integer(BigInt::from_i64(-4).unwrap());
        assert_eq!(ratio_string(&i), "-4");
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..20).filter(|&p| is_prime(p)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(!is_prime(4));
        assert!(!is_prime(9));
        assert!(!is_prime(1));
    }
}

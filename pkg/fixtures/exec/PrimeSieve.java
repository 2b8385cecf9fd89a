/** Sieve of Eratosthenes; prints the primes below a fixed bound. */
public class PrimeSieve {

    public static void main(String[] args) {
        System.out.println(primesBelow(60));
    }

    static String primesBelow(int bound) {
        boolean[] composite = new boolean[bound];
        for (int p = 2; p * p < bound; p++) {
            if (composite[p]) {
                continue;
            }
            for (int multiple = p * p; multiple < bound; multiple += p) {
                composite[multiple] = true;
            }
        }
        StringBuilder out = new StringBuilder();
        for (int n = 2; n < bound; n++) {
            if (!composite[n]) {
                if (out.length() > 0) {
                    out.append(' ');
                }
                out.append(n);
            }
        }
        return out.toString();
    }
}

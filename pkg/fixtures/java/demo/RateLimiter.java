/** Token-bucket limiter with nanosecond bookkeeping. */
public class RateLimiter {

    private final long capacity;
    private final double refillPerNano;
    private double available;
    private long lastRefillNanos;

    public RateLimiter(long capacity, double tokensPerSecond, long nowNanos) {
        this.capacity = capacity;
        this.refillPerNano = tokensPerSecond / 1_000_000_000.0;
        this.available = capacity;
        this.lastRefillNanos = nowNanos;
    }

    /** Attempts to take {@code tokens}; returns whether they were granted. */
    public boolean tryAcquire(int tokens, long nowNanos) {
        long elapsed = nowNanos - lastRefillNanos;
        if (elapsed < 0) {
            elapsed = 0;
        }
        double refilled = available + elapsed * refillPerNano;
        if (refilled > capacity) {
            refilled = capacity;
        }
        available = refilled;
        lastRefillNanos = nowNanos;
        if (available < tokens) {
            return false;
        }
        available -= tokens;
        return true;
    }

    long nanosUntil(int tokens) {
        double missing = tokens - available;
        if (missing <= 0) {
            return 0;
        }
        return (long) Math.ceil(missing / refillPerNano);
    }
}

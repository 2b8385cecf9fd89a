import java.util.concurrent.Callable;

/** Bounded exponential backoff around a callable task. */
public class RetryPolicy {

    private final int maxAttempts;
    private final long baseDelayMillis;
    private final long maxDelayMillis;

    public RetryPolicy(int maxAttempts, long baseDelayMillis, long maxDelayMillis) {
        this.maxAttempts = maxAttempts;
        this.baseDelayMillis = baseDelayMillis;
        this.maxDelayMillis = maxDelayMillis;
    }

    /**
     * Runs the task until it succeeds or attempts run out; the last failure
     * is rethrown wrapped, earlier ones only extend the delay.
     */
    public <T> T execute(Callable<T> task) throws Exception {
        Exception lastFailure = null;
        long delay = baseDelayMillis;
        for (int attempt = 1; attempt <= maxAttempts; attempt++) {
            try {
                return task.call();
            } catch (InterruptedException e) {
                Thread.currentThread().interrupt();
                throw e;
            } catch (Exception e) {
                lastFailure = e;
            }
            if (attempt < maxAttempts) {
                Thread.sleep(delay);
                delay = delay * 2;
                if (delay > maxDelayMillis) {
                    delay = maxDelayMillis;
                }
            }
        }
        throw new IllegalStateException("all " + maxAttempts + " attempts failed", lastFailure);
    }

    long delayForAttempt(int attempt) {
        long delay = baseDelayMillis;
        for (int i = 1; i < attempt; i++) {
            delay = Math.min(delay * 2, maxDelayMillis);
        }
        return delay;
    }
}
